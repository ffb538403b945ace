// Command-line frontend: every verification is a subcommand with CSV or JSON
// output and a stable exit-code contract:
//   0 all checks passed, 1 mathematical counterexample, 2 usage error,
//   3 capacity exceeded.
// Probability fields in CSV are exact num/den pairs except in `mc` output.

#include "bunkbed/bunkbed.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace bunkbed;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

constexpr int kDefaultMaxN = 9;      // 18-vertex subset DP
constexpr int kForcedVertexLimit = 25;

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct RunReport {
    std::string command;
    std::vector<CheckResult> checks;
    std::vector<json> rows;
    double elapsed_ms = 0.0;

    void add(const std::string& name, bool pass, const std::string& detail = "") {
        checks.push_back({name, pass, detail});
    }
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return true;
    }
};

struct OutputOptions {
    std::string format = "csv";
    std::string path;
    std::string csv_header;
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", out.path, "Write output to FILE instead of stdout");
}

std::string csv_escape(const json& v) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_boolean())
        return v.get<bool>() ? "1" : "0";
    return v.dump();
}

// CSV: rows to the stream, check summary to stderr. JSON: the whole report.
void emit(const RunReport& report, const OutputOptions& out,
          const std::vector<std::string>& columns) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out.path.empty()) {
        file.open(out.path);
        if (!file)
            throw std::invalid_argument("cannot open output file '" + out.path + "'");
        os = &file;
    }
    if (out.format == "json") {
        json j;
        j["command"] = report.command;
        j["pass"] = report.pass();
        j["elapsed_ms"] = report.elapsed_ms;
        j["checks"] = json::array();
        for (const auto& c : report.checks)
            j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        j["rows"] = report.rows;
        *os << j.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < columns.size(); ++i)
            *os << (i ? "," : "") << columns[i];
        *os << "\n";
        for (const auto& row : report.rows) {
            for (std::size_t i = 0; i < columns.size(); ++i)
                *os << (i ? "," : "") << csv_escape(row.at(columns[i]));
            *os << "\n";
        }
    }
    for (const auto& c : report.checks)
        std::cerr << "check " << c.name << ": " << (c.pass ? "PASS" : "FAIL")
                  << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    std::cerr << "result: " << (report.pass() ? "PASS" : "FAIL") << " (" << report.elapsed_ms
              << " ms)\n";
}

Rational parse_fraction(const std::string& text) {
    const Rational p = Rational::parse(text);
    if (p < Rational(0) || p > Rational(1))
        throw std::invalid_argument("probability '" + text + "' outside [0,1]");
    return p;
}

// `mc` also accepts decimal probabilities ("0.6" -> 6/10); exact commands
// take only a/b or integers.
Rational parse_probability_loose(const std::string& text) {
    const auto dot = text.find('.');
    if (dot == std::string::npos)
        return parse_fraction(text);
    const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    BigInt den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i)
        den *= 10;
    const Rational p{BigInt(digits), den};
    if (p < Rational(0) || p > Rational(1))
        throw std::invalid_argument("probability '" + text + "' outside [0,1]");
    return p;
}

std::vector<Rational> parse_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':'))
        parts.push_back(item);
    if (parts.size() != 3)
        throw std::invalid_argument("grid must be a:b:step");
    const Rational a = parse_fraction(parts[0]);
    const Rational b = parse_fraction(parts[1]);
    const Rational step = Rational::parse(parts[2]);
    if (step <= Rational(0))
        throw std::invalid_argument("grid step must be positive");
    if (b < a)
        throw std::invalid_argument("grid must have a <= b");
    std::vector<Rational> grid;
    for (Rational p = a; p <= b; p += step)
        grid.push_back(p);
    return grid;
}

json rational_fields(const std::string& prefix, const Rational& v) {
    return {{prefix + "_num", v.numerator().str()}, {prefix + "_den", v.denominator().str()}};
}

int resolve_workers(int workers) { return workers > 0 ? workers : env_default_workers(); }

// ---- verify-theorem ------------------------------------------------------

int cmd_verify_theorem(int n, const std::string& p_spec, const std::string& grid_spec,
                       bool force, int workers, const OutputOptions& out) {
    if (n < 2)
        throw std::invalid_argument("verify-theorem needs --n >= 2");
    if (!force && n > kDefaultMaxN)
        throw CapacityError("n=" + std::to_string(n) + " exceeds the default exact cap n=" +
                            std::to_string(kDefaultMaxN) +
                            "; rerun with --force or use the `mc` estimator");
    const int vertex_limit = force ? kForcedVertexLimit : kDefaultDpVertexLimit;

    std::vector<Rational> ps;
    if (!grid_spec.empty())
        ps = parse_grid(grid_spec);
    else
        ps.push_back(parse_fraction(p_spec.empty() ? "1/2" : p_spec));

    RunReport report;
    report.command = "verify-theorem";
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<DecompositionReport> decs(ps.size());
    std::vector<bool> partition_ok(ps.size(), false);
    parallel_for(ps.size(), resolve_workers(workers), [&](std::size_t i) {
        decs[i] = decompose(n, ps[i], vertex_limit);
        partition_ok[i] = partition_check(n, ps[i], vertex_limit);
    });

    const Rational half(1, 2);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto& dec = decs[i];
        const std::string at = " @p=" + ps[i].str();
        report.add("decomposition-exact" + at, dec.exact(),
                   "v: " + dec.decomposed_v.str() + ", v': " + dec.decomposed_vprime.str());
        report.add("partition-of-unity" + at, partition_ok[i]);
        if (ps[i] >= half)
            report.add("difference-nonnegative" + at, dec.difference >= Rational(0),
                       "difference = " + dec.difference.str());
        for (const auto& row : dec.rows) {
            json r = {{"n", n},
                      {"x", row.t.x},
                      {"y", row.t.y},
                      {"z", row.t.z},
                      {"C1", row.c1.str()},
                      {"C2", row.c2.str()},
                      {"B", row.boundary.str()}};
            r.update(rational_fields("p", ps[i]));
            r.update(rational_fields("P", row.class_prob));
            r.update(rational_fields("term", row.term_v - row.term_vprime));
            report.rows.push_back(std::move(r));
        }
    }
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit(report, out,
         {"n", "p_num", "p_den", "x", "y", "z", "C1", "C2", "P_num", "P_den", "B", "term_num",
          "term_den"});
    return report.pass() ? kExitPass : kExitCounterexample;
}

// ---- identities ----------------------------------------------------------

int cmd_identities(int k_max, int z_max, int workers, const OutputOptions& out) {
    if (k_max < 1)
        throw std::invalid_argument("identities needs --k-max >= 1");
    if (z_max < 1)
        z_max = k_max;
    factorial(2 * k_max + 2); // pre-extend the shared table before going parallel

    std::vector<std::pair<int, int>> cells;
    for (int k = 1; k <= k_max; ++k)
        for (int z = 1; z <= std::min(k, z_max); ++z)
            cells.emplace_back(k, z);

    RunReport report;
    report.command = "identities";
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::pair<bool, bool>> results(cells.size());
    parallel_for(cells.size(), resolve_workers(workers), [&](std::size_t i) {
        results[i] = {check_identity_even(cells[i].first, cells[i].second),
                      check_identity_odd(cells[i].first, cells[i].second)};
    });

    bool all = true;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        all = all && results[i].first && results[i].second;
        report.rows.push_back({{"k", cells[i].first},
                               {"z", cells[i].second},
                               {"even_ok", results[i].first},
                               {"odd_ok", results[i].second}});
    }
    report.add("telescoping-identities k<=" + std::to_string(k_max), all,
               std::to_string(cells.size()) + " cells");
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit(report, out, {"k", "z", "even_ok", "odd_ok"});
    return report.pass() ? kExitPass : kExitCounterexample;
}

// ---- counts ----------------------------------------------------------------

BigInt cdiff_by_definition(int n, int x, int y, int z) {
    auto c1 = [&](int a, int b) {
        const Triplet t{a, b, z};
        return t.valid_for(n) ? count_c1(n, t) : BigInt(0);
    };
    auto c2 = [&](int a, int b) {
        const Triplet t{a, b, z};
        return t.valid_for(n) ? count_c2(n, t) : BigInt(0);
    };
    BigInt v = c1(x, y) - c2(x, y);
    if (x != y)
        v += c1(y, x) - c2(y, x);
    return v;
}

int cmd_counts(int n, const std::string& triplet_spec, bool all, bool check,
               const OutputOptions& out) {
    if (n < 1)
        throw std::invalid_argument("counts needs --n >= 1");
    std::vector<Triplet> triplets;
    if (all) {
        for (int x = 1; x <= n; ++x)
            for (int y = 0; y <= n; ++y)
                for (int z = 0; z <= std::min(x, y); ++z)
                    if (Triplet{x, y, z}.valid_for(n))
                        triplets.push_back({x, y, z});
    } else {
        int x, y, z;
        char c1, c2;
        std::stringstream ss(triplet_spec);
        if (!(ss >> x >> c1 >> y >> c2 >> z) || c1 != ',' || c2 != ',')
            throw std::invalid_argument("--triplet must be x,y,z");
        const Triplet t{x, y, z};
        require_valid(n, t);
        triplets.push_back(t);
    }

    RunReport report;
    report.command = "counts";
    const auto t0 = std::chrono::steady_clock::now();

    std::map<std::array<int, 3>, EnumeratedClassCounts> oracle;
    if (check)
        oracle = enumerate_class_counts(n); // throws CapacityError past n=7

    bool all_ok = true;
    for (const auto& t : triplets) {
        const BigInt b = boundary_count(n, t);
        const BigInt c1 = count_c1(n, t);
        const BigInt c2 = count_c2(n, t);
        const BigInt total = count_total(n, t);
        report.rows.push_back({{"n", n},
                               {"x", t.x},
                               {"y", t.y},
                               {"z", t.z},
                               {"B", b.str()},
                               {"C1", c1.str()},
                               {"C2", c2.str()},
                               {"C_diff", cdiff_by_definition(n, t.x, t.y, t.z).str()},
                               {"total", total.str()}});
        if (check) {
            const auto it = oracle.find({t.x, t.y, t.z});
            const EnumeratedClassCounts counts =
                it == oracle.end() ? EnumeratedClassCounts{} : it->second;
            const bool ok = c1 == counts.with_v && c2 == counts.with_vprime &&
                            total == counts.total && b == boundary_count_direct(n, t);
            all_ok = all_ok && ok;
        }
    }
    if (check)
        report.add("closed-forms-vs-enumeration", all_ok,
                   std::to_string(triplets.size()) + " triplets");
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit(report, out, {"n", "x", "y", "z", "B", "C1", "C2", "C_diff", "total"});
    return report.pass() ? kExitPass : kExitCounterexample;
}

// ---- aux -------------------------------------------------------------------

EdgeProbabilityVector random_constrained_vector(const BunkbedGraph& g, std::mt19937_64& rng) {
    EdgeProbabilityVector p;
    p.values.assign(static_cast<std::size_t>(g.num_edges()), Rational(0));
    std::uniform_int_distribution<int> num(0, 12);
    std::uniform_int_distribution<int> den(12, 24);
    for (int e = 0; e < g.num_edges(); ++e) {
        if (g.symmetric_edge(e) < e) {
            p.values[static_cast<std::size_t>(e)] =
                p.values[static_cast<std::size_t>(g.symmetric_edge(e))];
            continue;
        }
        const int d = den(rng);
        p.values[static_cast<std::size_t>(e)] = Rational(std::min(num(rng), d), d);
    }
    return p;
}

BottomDistribution random_distribution(int columns, std::mt19937_64& rng) {
    BottomDistribution d;
    d.weights.assign(static_cast<std::size_t>(columns), Rational(0));
    std::uniform_int_distribution<int> w(0, 6);
    BigInt total = 0;
    std::vector<int> raw(static_cast<std::size_t>(columns));
    for (auto& r : raw)
        total += (r = w(rng));
    if (total == 0) {
        raw[0] = 1;
        total = 1;
    }
    for (int c = 0; c < columns; ++c)
        d.weights[static_cast<std::size_t>(c)] = Rational(BigInt(raw[static_cast<std::size_t>(c)]), total);
    return d;
}

int cmd_aux(const std::string& prop, int n, const std::string& graph_spec,
            const std::string& p_spec, std::uint64_t seed, int trials, const OutputOptions& out) {
    RunReport report;
    report.command = "aux --prop " + prop;
    const auto t0 = std::chrono::steady_clock::now();
    const Rational p = parse_fraction(p_spec.empty() ? "1/2" : p_spec);

    if (prop == "segment") {
        if (n < 2)
            throw std::invalid_argument("aux --prop segment needs --n >= 2");
        const BunkbedGraph g(OriginalGraph::path(n));
        const auto probs =
            EdgeProbabilityVector::constant(static_cast<std::size_t>(g.num_edges()), p);
        const auto seg = verify_segment(n, probs);
        json row = {{"n", n}, {"checked", seg.enumeration_checked}, {"match", seg.match}};
        row.update(rational_fields("p", p));
        row.update(rational_fields("closed", seg.closed_form));
        row.update(rational_fields("enum", seg.enumeration_checked ? seg.enumerated_difference
                                                                   : Rational(0)));
        report.rows.push_back(row);
        report.add("segment-closed-form", !seg.enumeration_checked || seg.match,
                   seg.closed_form.str());
        report.add("segment-factor-note", true, seg.note);
        report.elapsed_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        emit(report, out,
             {"n", "p_num", "p_den", "closed_num", "closed_den", "enum_num", "enum_den",
              "checked", "match"});
        return report.pass() ? kExitPass : kExitCounterexample;
    }

    const OriginalGraph original = graph_spec.empty()
                                       ? OriginalGraph::complete(n < 1 ? 3 : n)
                                       : OriginalGraph::from_spec(graph_spec);
    const BunkbedGraph g(original);

    if (prop == "2.3") {
        std::mt19937_64 rng(seed);
        for (int trial = 0; trial <= trials; ++trial) {
            const EdgeProbabilityVector probs =
                trial == 0 ? EdgeProbabilityVector::constant(
                                 static_cast<std::size_t>(g.num_edges()), p)
                           : random_constrained_vector(g, rng);
            const BottomDistribution d = trial == 0
                                             ? BottomDistribution::uniform(g.columns())
                                             : random_distribution(g.columns(), rng);
            const bool ok = mean_inequality_check(g, probs, d);
            report.rows.push_back({{"trial", trial}, {"ok", ok}});
            report.add("mean-inequality trial " + std::to_string(trial), ok);
        }
        report.elapsed_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        emit(report, out, {"trial", "ok"});
        return report.pass() ? kExitPass : kExitCounterexample;
    }

    if (prop == "2.4") {
        std::mt19937_64 rng(seed);
        for (int trial = 0; trial <= trials; ++trial) {
            EdgeProbabilityVector probs;
            if (trial == 0) {
                probs = EdgeProbabilityVector::constant(
                    static_cast<std::size_t>(g.num_edges()), p);
            } else {
                probs = random_constrained_vector(g, rng);
            }
            const auto rep = upper_bound_report(g, probs, 0, g.columns() > 1 ? 1 : 0);
            const bool ok = rep.inequality_ok && (!rep.chain_applicable || rep.chain_ok);
            json row = {{"trial", trial},
                        {"inequality_ok", rep.inequality_ok},
                        {"chain_applicable", rep.chain_applicable},
                        {"chain_ok", rep.chain_ok}};
            row.update(rational_fields("diff", rep.difference));
            row.update(rational_fields("joint", rep.joint_disconnect));
            report.rows.push_back(row);
            report.add("upper-bound trial " + std::to_string(trial), ok);
        }
        report.elapsed_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        emit(report, out,
             {"trial", "diff_num", "diff_den", "joint_num", "joint_den", "inequality_ok",
              "chain_applicable", "chain_ok"});
        return report.pass() ? kExitPass : kExitCounterexample;
    }

    throw std::invalid_argument("aux --prop must be one of 2.3, 2.4, segment");
}

// ---- mc --------------------------------------------------------------------

int cmd_mc(int n, const std::string& graph_spec, const std::string& p_spec,
           std::uint64_t samples, std::uint64_t seed, int workers, const std::string& target,
           int a, int b, const OutputOptions& out) {
    const OriginalGraph original = graph_spec.empty() ? OriginalGraph::complete(n)
                                                      : OriginalGraph::from_spec(graph_spec);
    const BunkbedGraph g(original);
    const Rational p = parse_probability_loose(p_spec.empty() ? "1/2" : p_spec);
    const auto probs = EdgeProbabilityVector::constant(static_cast<std::size_t>(g.num_edges()), p);
    const int w = resolve_workers(workers);

    RunReport report;
    report.command = "mc";
    const auto t0 = std::chrono::steady_clock::now();
    McEstimate est;
    if (target == "difference") {
        est = estimate_difference(g, probs, 0, g.columns() > 1 ? 1 : 0, samples, seed, w);
    } else if (target == "connection") {
        est = estimate_connection(g, probs, a, b, samples, seed, w);
    } else {
        throw std::invalid_argument("mc --target must be difference or connection");
    }
    json row = {{"graph", graph_spec.empty() ? "complete:" + std::to_string(n) : graph_spec},
                {"target", target},
                {"p", p.to_double()},
                {"samples", samples},
                {"seed", seed},
                {"workers", w},
                {"estimate", est.estimate},
                {"stderr", est.standard_error}};
    report.rows.push_back(row);
    report.add("estimate", true,
               std::to_string(est.estimate) + " +- " + std::to_string(est.standard_error));
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit(report, out,
         {"graph", "target", "p", "samples", "seed", "workers", "estimate", "stderr"});
    return kExitPass;
}

// ---- threshold ---------------------------------------------------------------

int cmd_threshold(int n, const std::string& step_spec, bool force, int workers,
                  const OutputOptions& out) {
    if (n < 2)
        throw std::invalid_argument("threshold needs --n >= 2");
    if (!force && n > kDefaultMaxN)
        throw CapacityError("n=" + std::to_string(n) + " exceeds the default exact cap n=" +
                            std::to_string(kDefaultMaxN) + "; rerun with --force");
    const int vertex_limit = force ? kForcedVertexLimit : kDefaultDpVertexLimit;
    const Rational step = Rational::parse(step_spec);
    if (step <= Rational(0) || step > Rational(1))
        throw std::invalid_argument("--step must be in (0,1]");

    std::vector<Rational> grid;
    for (Rational p(0); p <= Rational(1); p += step)
        grid.push_back(p);

    RunReport report;
    report.command = "threshold";
    const auto t0 = std::chrono::steady_clock::now();

    const BunkbedGraph graph(OriginalGraph::complete(n));
    std::vector<ThresholdRow> rows(grid.size());
    parallel_for(grid.size(), resolve_workers(workers), [&](std::size_t i) {
        ThresholdRow row;
        row.p = grid[i];
        row.lemma_pass = lemma32_check(n, grid[i], vertex_limit).pass();
        const auto probs = EdgeProbabilityVector::constant(
            static_cast<std::size_t>(graph.num_edges()), grid[i]);
        MainComponentTable table(graph.num_vertices(), graph.edges(), probs.values, 0,
                                 vertex_limit);
        row.difference = table.prob_reaches(1) - table.prob_reaches(graph.top_vertex(1));
        row.difference_nonnegative = row.difference >= Rational(0);
        rows[i] = std::move(row);
    });

    std::optional<Rational> lemma_threshold, theorem_threshold;
    for (const auto& row : rows) {
        if (row.lemma_pass && !lemma_threshold)
            lemma_threshold = row.p;
        if (row.difference_nonnegative && !theorem_threshold)
            theorem_threshold = row.p;
        json r = {{"lemma_pass", row.lemma_pass},
                  {"diff_nonneg", row.difference_nonnegative}};
        r.update(rational_fields("p", row.p));
        r.update(rational_fields("diff", row.difference));
        report.rows.push_back(r);
    }
    report.add("lemma-threshold", lemma_threshold.has_value(),
               lemma_threshold ? lemma_threshold->str() : "none on grid");
    report.add("theorem-threshold", theorem_threshold.has_value(),
               theorem_threshold ? theorem_threshold->str() : "none on grid");
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit(report, out, {"p_num", "p_den", "lemma_pass", "diff_num", "diff_den", "diff_nonneg"});
    return report.pass() ? kExitPass : kExitCounterexample;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification workbench for bunkbed connection probabilities"};
    app.require_subcommand(1);

    // verify-theorem
    int vt_n = 0;
    std::string vt_p, vt_grid;
    bool vt_force = false;
    int vt_workers = 0;
    OutputOptions vt_out;
    auto* vt = app.add_subcommand("verify-theorem",
                                  "Decomposition, partition of unity and difference sign on K_n");
    vt->add_option("--n", vt_n, "Number of columns")->required();
    vt->add_option("--p", vt_p, "Single parameter, a/b or integer");
    vt->add_option("--p-grid", vt_grid, "Grid a:b:step of parameters");
    vt->add_flag("--force", vt_force, "Override the default n cap");
    vt->add_option("--workers", vt_workers, "Worker threads (default BUNKBED_WORKERS or 1)");
    add_output_options(vt, vt_out);

    // identities
    int id_kmax = 0, id_zmax = 0, id_workers = 0;
    OutputOptions id_out;
    auto* id = app.add_subcommand("identities", "Telescoping C_diff sum identities over (k,z)");
    id->add_option("--k-max", id_kmax, "Largest k")->required();
    id->add_option("--z-max", id_zmax, "Largest z (default k-max)");
    id->add_option("--workers", id_workers, "Worker threads");
    add_output_options(id, id_out);

    // counts
    int ct_n = 0;
    std::string ct_triplet;
    bool ct_all = false, ct_check = false;
    OutputOptions ct_out;
    auto* ct = app.add_subcommand("counts", "Class counting functions B, C1, C2, C_diff, total");
    ct->add_option("--n", ct_n, "Number of columns")->required();
    ct->add_option("--triplet", ct_triplet, "Single class x,y,z");
    ct->add_flag("--all", ct_all, "All valid classes");
    ct->add_flag("--check", ct_check, "Cross-validate against subgraph enumeration (n <= 7)");
    add_output_options(ct, ct_out);

    // aux
    std::string aux_prop, aux_graph, aux_p;
    int aux_n = 0, aux_trials = 5;
    std::uint64_t aux_seed = 1;
    OutputOptions aux_out;
    auto* ax = app.add_subcommand("aux", "Averaged inequality, upper bound, line segment");
    ax->add_option("--prop", aux_prop, "2.3, 2.4 or segment")->required();
    ax->add_option("--n", aux_n, "Columns (complete:n / path length)");
    ax->add_option("--graph", aux_graph, "Graph spec: complete:n, path:n or edge-list file");
    ax->add_option("--p", aux_p, "Parameter for the constant-vector trial");
    ax->add_option("--seed", aux_seed, "Seed for random trial vectors");
    ax->add_option("--trials", aux_trials, "Number of random trials");
    add_output_options(ax, aux_out);

    // mc
    int mc_n = 0, mc_workers = 0, mc_a = 0, mc_b = 1;
    std::string mc_graph, mc_p, mc_target = "difference";
    std::uint64_t mc_samples = 100000, mc_seed = 1;
    OutputOptions mc_out;
    auto* mc = app.add_subcommand("mc", "Seeded Monte Carlo estimator for large graphs");
    mc->add_option("--n", mc_n, "Columns (complete:n)");
    mc->add_option("--graph", mc_graph, "Graph spec override");
    mc->add_option("--p", mc_p, "Parameter, a/b or decimal");
    mc->add_option("--samples", mc_samples, "Sample count")->check(CLI::PositiveNumber);
    mc->add_option("--seed", mc_seed, "RNG seed");
    mc->add_option("--workers", mc_workers, "Worker threads");
    mc->add_option("--target", mc_target, "difference or connection")
        ->check(CLI::IsMember({"difference", "connection"}));
    mc->add_option("--a", mc_a, "First vertex for --target connection");
    mc->add_option("--b", mc_b, "Second vertex for --target connection");
    add_output_options(mc, mc_out);

    // threshold
    int th_n = 0, th_workers = 0;
    std::string th_step = "1/20";
    bool th_force = false;
    OutputOptions th_out;
    auto* th = app.add_subcommand("threshold", "Empirical p-threshold scan of the argument");
    th->add_option("--n", th_n, "Number of columns")->required();
    th->add_option("--step", th_step, "Grid step, a/b");
    th->add_flag("--force", th_force, "Override the default n cap");
    th->add_option("--workers", th_workers, "Worker threads");
    add_output_options(th, th_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (vt->parsed())
            return cmd_verify_theorem(vt_n, vt_p, vt_grid, vt_force, vt_workers, vt_out);
        if (id->parsed())
            return cmd_identities(id_kmax, id_zmax, id_workers, id_out);
        if (ct->parsed()) {
            if (ct_triplet.empty() == !ct_all)
                throw std::invalid_argument("counts needs exactly one of --triplet or --all");
            return cmd_counts(ct_n, ct_triplet, ct_all, ct_check, ct_out);
        }
        if (ax->parsed())
            return cmd_aux(aux_prop, aux_n, aux_graph, aux_p, aux_seed, aux_trials, aux_out);
        if (mc->parsed())
            return cmd_mc(mc_n, mc_graph, mc_p, mc_samples, mc_seed, mc_workers, mc_target, mc_a,
                          mc_b, mc_out);
        if (th->parsed())
            return cmd_threshold(th_n, th_step, th_force, th_workers, th_out);
    } catch (const CapacityError& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "counterexample: " << e.what() << "\n";
        return kExitCounterexample;
    }
    return kExitUsage;
}

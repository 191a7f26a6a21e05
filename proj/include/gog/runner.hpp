#pragma once

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gog/anosov.hpp"
#include "gog/distortion.hpp"
#include "gog/normal_sets.hpp"
#include "gog/rd.hpp"
#include "gog/scenario.hpp"

namespace gog {

struct RunOverrides {
    std::optional<int> radius;
    std::optional<int> samples;
    std::optional<long long> seed;
    std::optional<long long> elements;
};

/// One CSV curve: rows of (x, value, witness).
struct CurveFile {
    std::string name;
    std::vector<std::array<std::string, 3>> rows;
};

struct RunReport {
    Json doc;
    std::vector<CurveFile> curves;
    bool partial = false;
};

namespace detail {

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string rat_str(const Rational& q) { return q.get_str(); }

inline Json classification_json(const GrowthClassification& c) {
    return Json{{"kind", growth_kind_name(c.kind)},
                {"degree", fmt_double(c.degree)},
                {"rate", fmt_double(c.rate)},
                {"loglog_residual", fmt_double(c.loglog_residual)},
                {"semilog_residual", fmt_double(c.semilog_residual)}};
}

inline std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Per-experiment state shared by all handlers.
struct RunContext {
    const Scenario* scenario = nullptr;
    const ScenarioModel* model = nullptr;
    RunReport* report = nullptr;
    size_t index = 0;
    std::string type;
    int samples = 20;
    long long seed = 1;
    long long elements = kDefaultElementBudget;
    std::optional<int> radius_override;

    int radius_of(const Json& exp, const char* key, int fallback) const {
        if (radius_override) return *radius_override;
        return exp.value(key, fallback);
    }

    const SubgroupOracle& subgroup(const Json& exp, const char* key) const {
        std::string name = exp.at(key).get<std::string>();
        auto it = model->subgroups.find(name);
        if (it == model->subgroups.end())
            throw ConfigParse("experiment refers to unknown subgroup: " + name);
        return *it->second;
    }

    int edge_of(const Json& exp, const char* key) const {
        std::string name = exp.at(key).get<std::string>();
        auto it = model->edge_id.find(name);
        if (it == model->edge_id.end())
            throw ConfigParse("experiment refers to unknown edge: " + name);
        return it->second;
    }

    const GraphOfGroups& graph() const {
        if (!model->graph) throw ConfigParse("experiment needs a graph scenario");
        return *model->graph;
    }

    const GroupCatalogEntry& companion() const {
        if (!model->group) throw ConfigParse("experiment needs a companion group");
        return *model->group;
    }

    void add_curve(Json& doc, const std::string& curve,
                   std::vector<std::array<std::string, 3>> rows) const {
        Json pts = Json::array();
        for (const auto& r : rows)
            pts.push_back(Json{{"x", r[0]}, {"value", r[1]}, {"witness", r[2]}});
        if (!doc.contains("curves")) doc["curves"] = Json::array();
        doc["curves"].push_back(Json{{"name", curve}, {"points", pts}});
        report->curves.push_back({scenario->id + "-" + std::to_string(index) + "-" +
                                      type + "-" + curve,
                                  std::move(rows)});
    }
};

// ---- individual experiments -----------------------------------------------

inline void run_disto(const RunContext& cx, const Json& exp, Json& doc) {
    const SubgroupOracle& sub = cx.subgroup(exp, "subgroup");
    int n_max = cx.radius_of(exp, "n_max", 8);
    DistortionCurve c = disto_curve(sub.ambient(), sub, n_max, cx.elements);
    doc["n_max"] = n_max;
    doc["truncated"] = c.truncated;
    doc["classification"] = classification_json(c.classification);
    std::vector<std::array<std::string, 3>> rows;
    const GroupCatalogEntry& h = sub.edge_group();
    for (const DistoPoint& p : c.points)
        rows.push_back({std::to_string(p.n), rat_str(p.disto),
                        h.element_str(p.witness_a) + " | " + h.element_str(p.witness_b)});
    cx.add_curve(doc, "disto", std::move(rows));
    if (c.truncated) cx.report->partial = true;
}

inline void run_witness_disto(const RunContext& cx, const Json& exp, Json& doc) {
    const SubgroupOracle& sub = cx.subgroup(exp, "subgroup");
    const GroupCatalogEntry& amb = sub.ambient();
    GroupElement t = element_from_json(amb, exp.at("t"));
    GroupElement h0 = element_from_json(amb, exp.at("h0"));
    int n_max = cx.radius_of(exp, "n_max", 6);
    WitnessCurve c = witness_disto_curve(amb, sub, t, h0, n_max);
    doc["n_max"] = n_max;
    doc["classification"] = classification_json(c.classification);
    std::vector<std::array<std::string, 3>> rows;
    for (const WitnessPoint& p : c.points)
        rows.push_back({std::to_string(p.n), std::to_string(p.subgroup_length),
                        amb.element_str(p.witness)});
    cx.add_curve(doc, "witness", std::move(rows));
}

inline void run_seemingly(const RunContext& cx, const Json& exp, Json& doc) {
    int path_len = cx.radius_of(exp, "path_len_max", 2);
    int ball_r = exp.value("edge_ball_radius", 3);
    SeemReport rep = seemingly_distortion_scan(cx.graph(), path_len, ball_r);
    doc["path_len_max"] = path_len;
    doc["edge_ball_radius"] = ball_r;
    doc["total_samples"] = rep.total_samples;
    doc["no_samples"] = rep.no_samples;
    std::vector<std::array<std::string, 3>> rows;
    for (const SeemPoint& p : rep.points)
        rows.push_back({std::to_string(p.n), rat_str(p.worst_ratio), p.witness_path});
    cx.add_curve(doc, "ratios", std::move(rows));
}

inline void run_tight(const RunContext& cx, const Json& exp, Json& doc) {
    int e = cx.edge_of(exp, "e");
    int f = cx.edge_of(exp, "f");
    TightReport rep = tight_dynamics_scan(cx.graph(), e, f,
                                          exp.value("edge_ball_radius", 2),
                                          exp.value("nearest_radius", 2));
    doc["considered"] = rep.considered;
    doc["auto_satisfied"] = rep.auto_satisfied;
    doc["unknown"] = rep.unknown;
    doc["violations"] = rep.violations;
    doc["k_emp"] = rep.k_emp;
    doc["c_emp"] = fmt_double(rep.c_emp);
}

inline void run_separation(const RunContext& cx, const Json& exp, Json& doc) {
    const SubgroupOracle& hi = cx.subgroup(exp, "left");
    const SubgroupOracle& hj = cx.subgroup(exp, "right");
    SeparationReport rep = separation_scan(
        hi.ambient(), hi, hj, exp.value("same", false), exp.value("u_radius", 2),
        exp.value("gamma_radius", 4), exp.value("search_radius", 8), cx.elements);
    doc["pairs"] = rep.pairs;
    doc["excluded"] = rep.excluded;
    doc["unknown"] = rep.unknown;
    doc["n_emp"] = rep.n_emp;
    doc["c_emp"] = fmt_double(rep.c_emp);
}

inline void run_rd(const RunContext& cx, const Json& exp, Json& doc) {
    RDParams p;
    p.r_max = cx.radius_of(exp, "r_max", 4);
    p.strategy = rd_strategy_from_name(exp.at("strategy").get<std::string>());
    p.samples = exp.contains("samples") ? exp.at("samples").get<int>() : cx.samples;
    p.seed = (unsigned long long)cx.seed;
    p.folner_factor = exp.value("folner_factor", 4);
    p.element_budget = cx.elements;
    if (exp.contains("restrict")) p.restrict_to = &cx.subgroup(exp, "restrict");
    const GroupCatalogEntry& group =
        p.restrict_to ? p.restrict_to->ambient() : cx.companion();
    RDCurve c = rd_ratio_curve(group, p);
    doc["strategy"] = rd_strategy_name(c.strategy);
    doc["r_max"] = p.r_max;
    doc["samples"] = p.samples;
    doc["classification"] = classification_json(c.growth);
    std::vector<std::array<std::string, 3>> rows;
    for (const RDPoint& pt : c.points)
        rows.push_back({std::to_string(pt.r), rat_str(pt.worst_ratio_sq),
                        std::to_string(pt.samples_used) + " samples"});
    cx.add_curve(doc, "ratio-sq", std::move(rows));
}

inline void run_amenable(const RunContext& cx, const Json& exp, Json& doc) {
    const GroupCatalogEntry& group = cx.companion();
    int r = exp.at("r").get<int>();
    int R = exp.at("R").get<int>();
    Rational bound = amenable_lower_bound(group, r, R, cx.elements);
    BallEnumerator ball(group, cx.elements);
    doc["r"] = r;
    doc["R"] = R;
    doc["bound_sq"] = rat_str(bound);
    doc["ball_size"] = ball.ball_size(r);
}

inline void run_anosov(const RunContext& cx, const Json& exp, Json& doc) {
    auto mv = exp.at("matrix").get<std::vector<long long>>();
    if (mv.size() != 4) throw ConfigParse("anosov matrix needs four entries");
    AnosovMap phi(Mat2{mv[0], mv[1], mv[2], mv[3]});
    auto g = exp.at("gamma").get<std::vector<long long>>();
    auto eta = exp.at("eta").get<std::vector<long long>>();
    if (g.size() != 2 || eta.size() != 2)
        throw ConfigParse("anosov gamma/eta need two entries");
    int n_max = std::max(1, cx.radius_of(exp, "n_max", 10));
    int j_max = exp.value("j_max", 6);
    doc["lambda"] = fmt_double(phi.lambda());
    doc["eigen_residual"] = fmt_double(phi.eigen_residual());
    doc["slope_gamma"] = fmt_double(phi.slope(g[0], g[1]));
    IterateWindow w = min_iterate_window(phi, g[0], g[1], n_max);
    doc["window"] = w.window;
    doc["outward_rate_pos"] = fmt_double(w.outward_rate_pos);
    doc["outward_rate_neg"] = fmt_double(w.outward_rate_neg);
    doc["phi_power_free"] = w.phi_power_free;
    MeridianScan scan = meridian_scan(phi, g[0], g[1], eta[0], eta[1], n_max, j_max);
    doc["meridian_cases"] = scan.cases;
    doc["meridian_c_emp"] = fmt_double(scan.c_emp);
    std::vector<std::array<std::string, 3>> rows;
    for (int n = 0; n <= n_max; ++n) {
        auto img = phi.apply(g[0], g[1], n);
        rows.push_back({std::to_string(n), fmt_double(phi.foliation_length(img[0], img[1])),
                        "(" + std::to_string(img[0]) + "," + std::to_string(img[1]) + ")"});
    }
    cx.add_curve(doc, "orbit", std::move(rows));
}

inline void run_magic(const RunContext& cx, const Json& exp, Json& doc) {
    int radius = cx.radius_of(exp, "radius", 2);
    int pairs = exp.value("pairs", 10);
    NormalSets ns(cx.graph(), 0, radius, cx.elements);
    std::vector<std::string> keys;
    for (const auto& [key, entry] : ns.entries()) keys.push_back(key);
    std::mt19937_64 rng((unsigned long long)cx.seed);
    auto random_fn = [&] {
        Pi1Fn f;
        for (const std::string& k : keys)
            if (rng() % 2) f.set(k, make_rational((long)(rng() % 8 + 1), (long)(rng() % 4 + 1)));
        if (f.empty() && !keys.empty()) f.set(keys.front(), 1);
        return f;
    };
    long long exact = 0;
    for (int i = 0; i < pairs; ++i) {
        Pi1Fn f = random_fn(), g = random_fn();
        if (lifted_pair_check(ns, f, g).exact()) ++exact;
    }
    doc["radius"] = radius;
    doc["pairs"] = pairs;
    doc["exact"] = exact;
    doc["all_exact"] = (exact == pairs);
}

inline void run_hat(const RunContext& cx, const Json& exp, Json& doc) {
    int r_max = cx.radius_of(exp, "r_max", 3);
    NormalSets ns(cx.graph(), 0, r_max, cx.elements);
    bool all = true;
    std::vector<std::array<std::string, 3>> rows;
    for (int r = 0; r <= r_max; ++r) {
        Pi1Fn f = ns.ball_indicator(r);
        FreeProductFn F = hat_lift(ns, f);
        bool ok = f.l2_norm_sq() == F.l2_norm_sq();
        all = all && ok;
        rows.push_back({std::to_string(r), rat_str(f.l2_norm_sq()), ok ? "exact" : "mismatch"});
    }
    doc["r_max"] = r_max;
    doc["all_exact"] = all;
    cx.add_curve(doc, "isometry", std::move(rows));
}

inline void run_identity(const RunContext& cx, const Json& exp, Json& doc) {
    const GraphOfGroups& graph = cx.graph();
    int e = cx.edge_of(exp, "edge");
    int re = graph.reverse(e);
    int v = graph.edge(e).from;
    int w = graph.edge(e).to;
    const GroupCatalogEntry& gv = graph.vertex_group(v);
    const GroupCatalogEntry& gw = graph.vertex_group(w);
    GroupElement outer = element_from_json(gw, exp.at("w_elem"));
    GroupElement inner = element_from_json(gv, exp.at("v_elem"));
    GroupElement base = element_from_json(gv, exp.at("base"));

    GSequence C = graph.trivial_sequence(v);
    C.steps.push_back({e, outer});
    C.steps.push_back({re, inner});

    bool all_len = true, all_pi1 = true;
    std::vector<std::array<std::string, 3>> rows;
    std::vector<std::pair<double, double>> samples;
    for (const Json& jn : exp.at("n")) {
        int n = jn.get<int>();
        if (n < 2) throw ConfigParse("identity experiment needs n >= 2");
        if (cx.radius_override && *cx.radius_override == 0) continue;
        long long m_exp = 1LL << (n - 2);
        GSequence X = graph.trivial_sequence(v);
        X.g0 = gv.power_of(base, m_exp);
        GSequence s =
            graph.seq_multiply(graph.seq_multiply(C, X), graph.seq_invert(C));
        GSequence direct = graph.trivial_sequence(v);
        direct.g0 = gv.power_of(base, 1LL << n);
        long long lhs = fp_length(graph, fp_of_sequence(graph, s), 1 << 10);
        long long rhs_len = fp_length(graph, fp_of_sequence(graph, direct), 1 << 10);
        bool len_ok = 4 * lhs == rhs_len + 32; // lhs == rhs_len / 4 + 8
        bool pi1_ok = graph.seq_equal(s, direct);
        all_len = all_len && len_ok;
        all_pi1 = all_pi1 && pi1_ok;
        rows.push_back({std::to_string(n), std::to_string(rhs_len),
                        "conjugated gamma-length " + std::to_string(lhs) +
                            (len_ok && pi1_ok ? "" : " MISMATCH")});
        samples.push_back({(double)n, (double)rhs_len});
    }
    doc["all_lengths_match"] = all_len;
    doc["all_pi1_equal"] = all_pi1;
    if (samples.size() >= 5)
        doc["classification"] = classification_json(classify_growth(samples));
    cx.add_curve(doc, "lengths", std::move(rows));
}

inline void run_crossing(const RunContext& cx, const Json& exp, Json& doc) {
    const GraphOfGroups& graph = cx.graph();
    int e = cx.edge_of(exp, "edge");
    int n_max = cx.radius_of(exp, "n_max", 8);
    const SubgroupOracle& fwd = graph.embedding(e);
    const SubgroupOracle& rev = graph.embedding(graph.reverse(e));
    const GroupCatalogEntry& eg = fwd.edge_group();
    if (eg.generators.empty()) throw ConfigParse("crossing needs an edge generator");
    LengthTable& lt_to = graph.vertex_lengths(graph.edge(e).to);
    LengthTable& lt_from = graph.vertex_lengths(graph.edge(e).from);
    GroupElement a = eg.generator(0);

    long long k_cap = std::min<long long>(4096, 1LL << (n_max / 2 + 2));
    std::vector<long long> best((size_t)n_max + 1, 0);
    std::vector<long long> best_k((size_t)n_max + 1, 0);
    for (long long k = 1; k <= k_cap; ++k) {
        GroupElement h = eg.power_of(a, k);
        auto lt = lt_to.length(fwd.iota(h), n_max);
        if (!lt || *lt > n_max || *lt < 1) continue;
        long long lf = lt_from.length_checked(rev.iota(h), (int)(4 * k_cap));
        if (lf > best[(size_t)*lt]) {
            best[(size_t)*lt] = lf;
            best_k[(size_t)*lt] = k;
        }
    }
    std::vector<std::array<std::string, 3>> rows;
    std::vector<std::pair<double, double>> samples;
    long long running = 0, running_k = 0;
    for (int n = 1; n <= n_max; ++n) {
        if (best[(size_t)n] > running) {
            running = best[(size_t)n];
            running_k = best_k[(size_t)n];
        }
        if (running == 0) continue;
        rows.push_back({std::to_string(n), std::to_string(running),
                        eg.generators[0].name + "^" + std::to_string(running_k)});
        samples.push_back({(double)n, (double)running});
    }
    doc["n_max"] = n_max;
    if (samples.size() >= 5)
        doc["classification"] = classification_json(classify_growth(samples));
    cx.add_curve(doc, "crossing", std::move(rows));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Scenario runner
// ---------------------------------------------------------------------------

inline RunReport run_scenario(const Scenario& s, const RunOverrides& o = {}) {
    ScenarioModel model = build_model(s);
    RunReport rep;
    long long seed = o.seed.value_or(s.budgets.seed);
    int samples = o.samples.value_or(s.budgets.samples);
    long long elements = o.elements.value_or(s.budgets.elements);

    rep.doc["schema_version"] = 1;
    rep.doc["scenario"] = s.id;
    rep.doc["title"] = s.title;
    rep.doc["generated_at"] = detail::utc_timestamp();
    rep.doc["seed"] = seed;
    rep.doc["samples"] = samples;
    rep.doc["element_budget"] = elements;
    if (o.radius) rep.doc["radius_override"] = *o.radius;
    rep.doc["status"] = "complete";
    rep.doc["experiments"] = Json::array();

    for (size_t i = 0; i < s.experiments.size(); ++i) {
        const Json& exp = s.experiments[i];
        std::string type = exp.at("type").get<std::string>();
        detail::RunContext cx;
        cx.scenario = &s;
        cx.model = &model;
        cx.report = &rep;
        cx.index = i;
        cx.type = type;
        cx.samples = samples;
        cx.seed = seed;
        cx.elements = elements;
        cx.radius_override = o.radius;

        Json doc;
        doc["type"] = type;
        try {
            if (type == "disto") detail::run_disto(cx, exp, doc);
            else if (type == "witness-disto") detail::run_witness_disto(cx, exp, doc);
            else if (type == "seemingly") detail::run_seemingly(cx, exp, doc);
            else if (type == "tight") detail::run_tight(cx, exp, doc);
            else if (type == "separation") detail::run_separation(cx, exp, doc);
            else if (type == "rd") detail::run_rd(cx, exp, doc);
            else if (type == "amenable") detail::run_amenable(cx, exp, doc);
            else if (type == "anosov") detail::run_anosov(cx, exp, doc);
            else if (type == "magic") detail::run_magic(cx, exp, doc);
            else if (type == "hat") detail::run_hat(cx, exp, doc);
            else if (type == "identity") detail::run_identity(cx, exp, doc);
            else if (type == "crossing") detail::run_crossing(cx, exp, doc);
            else throw ConfigParse("unknown experiment type: " + type);
        } catch (const BudgetExceeded& b) {
            doc["partial"] = true;
            doc["error"] = b.what();
            doc["partial_radius"] = b.partial_radius;
            rep.partial = true;
        }
        rep.doc["experiments"].push_back(std::move(doc));
    }
    if (rep.partial) rep.doc["status"] = "partial";
    return rep;
}

// ---------------------------------------------------------------------------
// File emission
// ---------------------------------------------------------------------------

inline std::string csv_text(const CurveFile& c) {
    std::string out = "x,value,witness\n";
    for (const auto& row : c.rows) {
        std::string witness = row[2];
        bool quote = witness.find(',') != std::string::npos ||
                     witness.find('"') != std::string::npos;
        if (quote) {
            std::string q = "\"";
            for (char ch : witness) {
                if (ch == '"') q += '"';
                q += ch;
            }
            q += '"';
            witness = q;
        }
        out += row[0] + "," + row[1] + "," + witness + "\n";
    }
    return out;
}

/// Writes report files; format is "json", "csv", or "both". Returns the list
/// of written paths.
inline std::vector<std::string> write_report(const RunReport& rep,
                                             const std::string& out_dir,
                                             const std::string& format) {
    if (format != "json" && format != "csv" && format != "both")
        throw ConfigParse("unknown format: " + format);
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> written;
    std::string id = rep.doc.at("scenario").get<std::string>();
    if (format == "json" || format == "both") {
        fs::path p = fs::path(out_dir) / (id + ".json");
        std::ofstream f(p);
        f << rep.doc.dump(2) << "\n";
        written.push_back(p.string());
    }
    if (format == "csv" || format == "both") {
        for (const CurveFile& c : rep.curves) {
            fs::path p = fs::path(out_dir) / (c.name + ".csv");
            std::ofstream f(p);
            f << csv_text(c);
            written.push_back(p.string());
        }
    }
    return written;
}

} // namespace gog

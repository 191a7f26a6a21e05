#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gog/graph.hpp"
#include "gog/group.hpp"
#include "gog/oracle.hpp"

namespace gog {

/// Order-preserving JSON so serialized configurations and reports are stable.
using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Name tables
// ---------------------------------------------------------------------------

/// backend_from_name returns nullopt on unknown names; configs want a loud
/// failure instead.
inline OracleBackend backend_checked(const std::string& name) {
    auto b = backend_from_name(name);
    if (!b) throw ConfigParse("unknown oracle backend: " + name);
    return *b;
}

// ---------------------------------------------------------------------------
// Group and element specs (kept as verbatim JSON, interpreted on demand)
// ---------------------------------------------------------------------------

/// Builds a catalog group from its spec:
///   {"kind":"free","rank":2,"names":["a","b"]}
///   {"kind":"free-abelian","rank":2}
///   {"kind":"semidirect-z2-z","matrix":[2,1,1,1]}
///   {"kind":"free-by-cyclic","rank":3,"images":[[1,2],[2],[3]]}
///   {"kind":"baumslag-solitar","m":2,"names":["x","t"]}
inline GroupCatalogEntry group_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigParse("group spec needs a 'kind' field");
    std::string kind = j.at("kind").get<std::string>();
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    try {
        if (kind == "free")
            return GroupCatalogEntry::free_group(j.at("rank").get<int>(), names);
        if (kind == "free-abelian")
            return GroupCatalogEntry::free_abelian(j.at("rank").get<int>(), names);
        if (kind == "semidirect-z2-z") {
            auto m = j.at("matrix").get<std::vector<long long>>();
            if (m.size() != 4) throw ConfigParse("matrix needs four entries");
            return GroupCatalogEntry::semidirect_z2_z(Mat2{m[0], m[1], m[2], m[3]}, names);
        }
        if (kind == "free-by-cyclic") {
            std::vector<Word> images;
            for (const Json& w : j.at("images")) images.push_back(w.get<Word>());
            return GroupCatalogEntry::free_by_cyclic(j.at("rank").get<int>(), images, names);
        }
        if (kind == "baumslag-solitar")
            return GroupCatalogEntry::baumslag_solitar(j.at("m").get<long long>(), names);
    } catch (const Json::exception& e) {
        throw ConfigParse(std::string("bad group spec: ") + e.what());
    }
    throw ConfigParse("unknown group kind: " + kind);
}

/// Builds an element of `g` from its spec: {"gen":i}, {"gen":i,"pow":k},
/// {"word":[1,-2]}, or {"vec":[1,0],"power":k}.
inline GroupElement element_from_json(const GroupCatalogEntry& g, const Json& j) {
    if (!j.is_object()) throw ConfigParse("element spec must be an object");
    GroupElement e = g.identity();
    if (j.contains("gen")) {
        int i = j.at("gen").get<int>();
        if (i < 0 || i >= (int)g.generators.size())
            throw ConfigParse("generator index out of range");
        e = g.generator(i);
        if (j.contains("pow")) e = g.power_of(e, j.at("pow").get<long long>());
    } else if (j.contains("word")) {
        e.word = word_reduce(j.at("word").get<Word>());
        if (j.contains("power")) e.power = j.at("power").get<long long>();
    } else if (j.contains("vec")) {
        e.vec = j.at("vec").get<Vec>();
        if (j.contains("power")) e.power = j.at("power").get<long long>();
    } else {
        throw ConfigParse("element spec needs 'gen', 'word', or 'vec'");
    }
    g.check(e);
    return e;
}

// ---------------------------------------------------------------------------
// Scenario document
// ---------------------------------------------------------------------------

struct BudgetSpec {
    int radius = 4;
    int samples = 20;
    long long seed = 1;
    long long elements = kDefaultElementBudget;
};

/// Subgroup of the scenario's companion group ("on":"group") or of a named
/// vertex group, with its abstract model group and oracle backend.
struct SubgroupSpec {
    std::string name;
    std::string on;
    std::string backend;
    Json group;
    std::vector<Json> images;
};

struct VertexSpec {
    std::string name;
    Json group;
};

/// One edge pair: `fwd` embeds the edge group into the `to` vertex group,
/// `rev` into the `from` vertex group. Optional `declared` lists override the
/// embedding images checked by validate (used to model mismatched configs).
struct EdgeSpec {
    std::string name;
    std::string from, to;
    Json group;
    std::string fwd_backend, rev_backend;
    std::vector<Json> fwd_images, rev_images;
    std::optional<std::vector<Json>> fwd_declared, rev_declared;
};

struct Scenario {
    std::string id;
    std::string title;
    Json group;                        // companion/single group spec (may be null)
    std::vector<VertexSpec> vertices;  // empty for single-group scenarios
    std::vector<EdgeSpec> edges;
    std::vector<SubgroupSpec> subgroups;
    std::vector<Json> experiments; // interpreted by the runner
    BudgetSpec budgets;

    bool is_graph() const { return !vertices.empty(); }
};

inline std::vector<Json> side_images(const Json& side) {
    std::vector<Json> out;
    for (const Json& e : side.at("images")) out.push_back(e);
    return out;
}

inline Scenario scenario_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigParse("scenario document must be an object");
    Scenario s;
    try {
        s.id = j.at("id").get<std::string>();
        s.title = j.value("title", std::string{});
        if (j.contains("group")) s.group = j.at("group");
        if (j.contains("vertices"))
            for (const Json& v : j.at("vertices"))
                s.vertices.push_back({v.at("name").get<std::string>(), v.at("group")});
        if (j.contains("edges"))
            for (const Json& e : j.at("edges")) {
                EdgeSpec spec;
                spec.name = e.at("name").get<std::string>();
                spec.from = e.at("from").get<std::string>();
                spec.to = e.at("to").get<std::string>();
                spec.group = e.at("group");
                const Json& fwd = e.at("fwd");
                const Json& rev = e.at("rev");
                spec.fwd_backend = fwd.at("backend").get<std::string>();
                spec.rev_backend = rev.at("backend").get<std::string>();
                spec.fwd_images = side_images(fwd);
                spec.rev_images = side_images(rev);
                if (fwd.contains("declared")) spec.fwd_declared = side_images(Json{{"images", fwd.at("declared")}});
                if (rev.contains("declared")) spec.rev_declared = side_images(Json{{"images", rev.at("declared")}});
                s.edges.push_back(std::move(spec));
            }
        if (j.contains("subgroups"))
            for (const Json& h : j.at("subgroups")) {
                SubgroupSpec spec;
                spec.name = h.at("name").get<std::string>();
                spec.on = h.value("on", std::string("group"));
                spec.backend = h.at("backend").get<std::string>();
                spec.group = h.at("group");
                for (const Json& img : h.at("images")) spec.images.push_back(img);
                s.subgroups.push_back(std::move(spec));
            }
        if (j.contains("experiments"))
            for (const Json& e : j.at("experiments")) s.experiments.push_back(e);
        if (j.contains("budgets")) {
            const Json& b = j.at("budgets");
            s.budgets.radius = b.value("radius", s.budgets.radius);
            s.budgets.samples = b.value("samples", s.budgets.samples);
            s.budgets.seed = b.value("seed", s.budgets.seed);
            s.budgets.elements = b.value("elements", s.budgets.elements);
        }
    } catch (const Json::exception& e) {
        throw ConfigParse(std::string("scenario document: ") + e.what());
    }
    if (s.id.empty()) throw ConfigParse("scenario id must be nonempty");
    if (!s.is_graph() && s.group.is_null())
        throw ConfigParse("scenario needs either vertices or a group");
    return s;
}

inline Json scenario_to_json(const Scenario& s) {
    Json j;
    j["id"] = s.id;
    if (!s.title.empty()) j["title"] = s.title;
    if (!s.group.is_null()) j["group"] = s.group;
    if (s.is_graph()) {
        Json vs = Json::array();
        for (const VertexSpec& v : s.vertices)
            vs.push_back(Json{{"name", v.name}, {"group", v.group}});
        j["vertices"] = vs;
        Json es = Json::array();
        for (const EdgeSpec& e : s.edges) {
            Json side_fwd{{"backend", e.fwd_backend}, {"images", e.fwd_images}};
            if (e.fwd_declared) side_fwd["declared"] = *e.fwd_declared;
            Json side_rev{{"backend", e.rev_backend}, {"images", e.rev_images}};
            if (e.rev_declared) side_rev["declared"] = *e.rev_declared;
            es.push_back(Json{{"name", e.name},
                              {"from", e.from},
                              {"to", e.to},
                              {"group", e.group},
                              {"fwd", side_fwd},
                              {"rev", side_rev}});
        }
        j["edges"] = es;
    }
    if (!s.subgroups.empty()) {
        Json hs = Json::array();
        for (const SubgroupSpec& h : s.subgroups)
            hs.push_back(Json{{"name", h.name},
                              {"on", h.on},
                              {"backend", h.backend},
                              {"group", h.group},
                              {"images", h.images}});
        j["subgroups"] = hs;
    }
    j["experiments"] = s.experiments;
    j["budgets"] = Json{{"radius", s.budgets.radius},
                        {"samples", s.budgets.samples},
                        {"seed", s.budgets.seed},
                        {"elements", s.budgets.elements}};
    return j;
}

// ---------------------------------------------------------------------------
// Live model
// ---------------------------------------------------------------------------

/// Instantiated scenario: heap-stable group objects, the graph (if any), and
/// one live oracle per declared subgroup.
struct ScenarioModel {
    std::unique_ptr<GroupCatalogEntry> group; // companion/single group
    std::unique_ptr<GraphOfGroups> graph;
    std::map<std::string, int> vertex_id;
    std::map<std::string, int> edge_id; // "e" -> e, "e~" -> reverse(e)
    std::map<std::string, std::shared_ptr<SubgroupOracle>> subgroups;

    const GroupCatalogEntry& ambient_of(const Scenario& s, const std::string& on) const {
        if (on == "group") {
            if (!group) throw ConfigParse("scenario " + s.id + " has no companion group");
            return *group;
        }
        auto it = vertex_id.find(on);
        if (it == vertex_id.end())
            throw ConfigParse("subgroup refers to unknown vertex: " + on);
        return graph->vertex_group(it->second);
    }
};

inline ScenarioModel build_model(const Scenario& s) {
    ScenarioModel m;
    if (!s.group.is_null())
        m.group = std::make_unique<GroupCatalogEntry>(group_from_json(s.group));
    if (s.is_graph()) {
        m.graph = std::make_unique<GraphOfGroups>();
        for (const VertexSpec& v : s.vertices)
            m.vertex_id[v.name] = m.graph->add_vertex(v.name, group_from_json(v.group));
        for (const EdgeSpec& e : s.edges) {
            auto from = m.vertex_id.find(e.from);
            auto to = m.vertex_id.find(e.to);
            if (from == m.vertex_id.end() || to == m.vertex_id.end())
                throw ConfigParse("edge " + e.name + " references an unknown vertex");
            auto make_side = [&](int vertex, const std::string& backend,
                                 const std::vector<Json>& images) {
                const GroupCatalogEntry& amb = m.graph->vertex_group(vertex);
                GroupCatalogEntry edge_group = group_from_json(e.group);
                std::vector<GroupElement> imgs;
                for (const Json& spec : images) imgs.push_back(element_from_json(amb, spec));
                return std::make_shared<SubgroupOracle>(amb, std::move(edge_group), imgs,
                                                        backend_checked(backend));
            };
            int id = m.graph->add_edge_pair(
                e.name, from->second, to->second,
                make_side(to->second, e.fwd_backend, e.fwd_images),
                make_side(from->second, e.rev_backend, e.rev_images));
            m.edge_id[e.name] = id;
            m.edge_id[e.name + "~"] = m.graph->reverse(id);
        }
    }
    for (const SubgroupSpec& h : s.subgroups) {
        const GroupCatalogEntry& amb = m.ambient_of(s, h.on);
        GroupCatalogEntry model = group_from_json(h.group);
        std::vector<GroupElement> imgs;
        for (const Json& spec : h.images) imgs.push_back(element_from_json(amb, spec));
        m.subgroups[h.name] = std::make_shared<SubgroupOracle>(
            amb, std::move(model), imgs, backend_checked(h.backend));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// Structural and semantic diagnostics; an empty list means the configuration
/// is accepted. Diagnostics are prefixed with a stable tag:
///   GraphIllFormed           - endpoints or references are inconsistent
///   EmbeddingOracleMismatch  - a declared embedding image fails its oracle
///   RelatorViolation         - images do not respect the edge-group relations
///   ConfigParse              - the document could not be interpreted at all
inline std::vector<std::string> validate_scenario(const Scenario& s) {
    std::vector<std::string> out;
    std::map<std::string, int> vertex_names;
    for (const VertexSpec& v : s.vertices) {
        if (vertex_names.count(v.name))
            out.push_back("GraphIllFormed: duplicate vertex name '" + v.name + "'");
        vertex_names[v.name] = 1;
    }
    for (const EdgeSpec& e : s.edges)
        for (const std::string& end : {e.from, e.to})
            if (!vertex_names.count(end))
                out.push_back("GraphIllFormed: edge '" + e.name +
                              "' endpoint '" + end + "' is not a vertex");
    if (!out.empty()) return out; // structure must hold before semantic checks

    ScenarioModel m;
    try {
        m = build_model(s);
    } catch (const Error& err) {
        out.push_back(std::string("ConfigParse: ") + err.what());
        return out;
    }

    auto check_embedding = [&](const SubgroupOracle& oracle, const GroupCatalogEntry& amb,
                               const std::optional<std::vector<Json>>& declared,
                               const std::string& label) {
        const GroupCatalogEntry& eg = oracle.edge_group();
        // declared images (defaulting to the oracle's own) must lie in the
        // oracle subgroup
        std::vector<GroupElement> imgs;
        if (declared) {
            for (const Json& spec : *declared) imgs.push_back(element_from_json(amb, spec));
        } else {
            imgs = oracle.images();
        }
        for (size_t i = 0; i < imgs.size(); ++i) {
            auto c = oracle.contains_checked(imgs[i]);
            if (!c || !*c)
                out.push_back("EmbeddingOracleMismatch: " + label + " image of generator " +
                              std::to_string(i + 1) + " is not in the declared oracle");
        }
        // edge-group relations: abelian edge groups need commuting images
        if (eg.kind == GroupKind::FreeAbelian) {
            for (size_t i = 0; i < oracle.images().size(); ++i)
                for (size_t k = i + 1; k < oracle.images().size(); ++k) {
                    const GroupElement& a = oracle.images()[i];
                    const GroupElement& b = oracle.images()[k];
                    if (amb.multiply(a, b) != amb.multiply(b, a))
                        out.push_back("RelatorViolation: " + label +
                                      " images of an abelian edge group do not commute");
                }
        }
    };

    for (const EdgeSpec& e : s.edges) {
        int id = m.edge_id.at(e.name);
        check_embedding(m.graph->embedding(id), m.graph->vertex_group(m.graph->edge(id).to),
                        e.fwd_declared, "edge '" + e.name + "' forward");
        int rid = m.graph->reverse(id);
        check_embedding(m.graph->embedding(rid),
                        m.graph->vertex_group(m.graph->edge(rid).to), e.rev_declared,
                        "edge '" + e.name + "' reverse");
    }
    for (const SubgroupSpec& h : s.subgroups)
        check_embedding(*m.subgroups.at(h.name), m.ambient_of(s, h.on), std::nullopt,
                        "subgroup '" + h.name + "'");
    return out;
}

// ---------------------------------------------------------------------------
// Bundled catalog
// ---------------------------------------------------------------------------

namespace detail {

inline Json gspec_free(int rank, std::vector<std::string> names) {
    return Json{{"kind", "free"}, {"rank", rank}, {"names", names}};
}

inline Json gspec_free_abelian(int rank, std::vector<std::string> names) {
    return Json{{"kind", "free-abelian"}, {"rank", rank}, {"names", names}};
}

inline Json gspec_sol_cat() {
    return Json{{"kind", "semidirect-z2-z"}, {"matrix", {2, 1, 1, 1}}};
}

inline Json gspec_bs12(std::vector<std::string> names) {
    return Json{{"kind", "baumslag-solitar"}, {"m", 2}, {"names", names}};
}

inline Json eword(Word w) { return Json{{"word", w}}; }
inline Json evec(Vec v) { return Json{{"vec", v}}; }
inline Json egen(int i) { return Json{{"gen", i}}; }

inline EdgeSpec edge(std::string name, std::string from, std::string to, Json group,
                     std::string fwd_backend, std::vector<Json> fwd_images,
                     std::string rev_backend, std::vector<Json> rev_images) {
    EdgeSpec e;
    e.name = std::move(name);
    e.from = std::move(from);
    e.to = std::move(to);
    e.group = std::move(group);
    e.fwd_backend = std::move(fwd_backend);
    e.fwd_images = std::move(fwd_images);
    e.rev_backend = std::move(rev_backend);
    e.rev_images = std::move(rev_images);
    return e;
}

inline SubgroupSpec subgroup(std::string name, std::string on, std::string backend,
                             Json group, std::vector<Json> images) {
    SubgroupSpec h;
    h.name = std::move(name);
    h.on = std::move(on);
    h.backend = std::move(backend);
    h.group = std::move(group);
    h.images = std::move(images);
    return h;
}

} // namespace detail

inline std::vector<std::string> bundled_scenario_ids() {
    return {"g0",       "g1-bs12",  "g2-formanek-procesi", "g3-sol-amalgam",
            "g4-bs-amalgam", "g5-loose", "oneedge",        "seemexp",
            "sol-lattice",   "free-haagerup", "z2-rd"};
}

inline Scenario bundled_scenario(const std::string& id) {
    using namespace detail;
    Scenario s;
    s.id = id;
    if (id == "g0") {
        s.title = "rank-two HNN with one loose embedding";
        s.vertices = {{"v", gspec_free(2, {"x1", "x2"})}};
        s.edges = {edge("e", "v", "v", gspec_free(2, {"a1", "a2"}),
                        "stallings", {eword({1}), eword({2})},
                        "stallings", {eword({1}), eword({2, 1, 1})})};
        s.experiments = {Json{{"type", "seemingly"}, {"path_len_max", 3}, {"edge_ball_radius", 3}},
                         Json{{"type", "magic"}, {"radius", 2}, {"pairs", 12}},
                         Json{{"type", "hat"}, {"r_max", 3}}};
        s.budgets.radius = 3;
    } else if (id == "g1-bs12") {
        s.title = "HNN of Z doubling the generator (BS(1,2))";
        s.group = gspec_bs12({"x", "t"});
        s.vertices = {{"v", gspec_free_abelian(1, {"x"})}};
        s.edges = {edge("e", "v", "v", gspec_free_abelian(1, {"a"}),
                        "cyclic-root", {evec({1})}, "cyclic-root", {evec({2})})};
        s.subgroups = {subgroup("x-axis", "group", "cyclic-root",
                                gspec_free_abelian(1, {"a"}), {egen(0)})};
        s.experiments = {Json{{"type", "disto"}, {"subgroup", "x-axis"}, {"n_max", 12}},
                         Json{{"type", "rd"},
                              {"strategy", "folner-indicator"},
                              {"r_max", 6},
                              {"samples", 1},
                              {"restrict", "x-axis"}},
                         Json{{"type", "seemingly"}, {"path_len_max", 2}, {"edge_ball_radius", 4}},
                         Json{{"type", "magic"}, {"radius", 2}, {"pairs", 12}},
                         Json{{"type", "hat"}, {"r_max", 3}}};
        s.budgets.radius = 12;
        s.budgets.elements = 2'000'000;
    } else if (id == "g2-formanek-procesi") {
        s.title = "two-loop graph on a rank-three free group";
        s.vertices = {{"v", gspec_free(3, {"x1", "x2", "y"})}};
        Json eg = gspec_free(3, {"a1", "a2", "b"});
        s.edges = {edge("e1", "v", "v", eg, "stallings",
                        {eword({1}), eword({2}), eword({3, 1})}, "stallings",
                        {eword({1}), eword({2}), eword({3})}),
                   edge("e2", "v", "v", eg, "stallings",
                        {eword({1}), eword({2}), eword({3, 2})}, "stallings",
                        {eword({1}), eword({2}), eword({3})})};
        s.experiments = {Json{{"type", "seemingly"}, {"path_len_max", 2}, {"edge_ball_radius", 2}},
                         Json{{"type", "hat"}, {"r_max", 3}}};
        s.budgets.radius = 3;
    } else if (id == "g3-sol-amalgam") {
        s.title = "two Sol pieces glued along the fiber torus";
        s.vertices = {{"v", gspec_sol_cat()}, {"w", gspec_sol_cat()}};
        s.edges = {edge("e", "v", "w", gspec_free_abelian(2, {"h1", "h2"}),
                        "fiber-projection", {evec({1, 0}), evec({0, 1})},
                        "fiber-projection", {evec({1, 0}), evec({0, 1})})};
        s.subgroups = {subgroup("fiber", "v", "fiber-projection",
                                gspec_free_abelian(2, {"h1", "h2"}),
                                {evec({1, 0}), evec({0, 1})})};
        s.experiments = {Json{{"type", "witness-disto"},
                              {"subgroup", "fiber"},
                              {"t", egen(2)},
                              {"h0", evec({1, 0})},
                              {"n_max", 6}},
                         Json{{"type", "anosov"},
                              {"matrix", {2, 1, 1, 1}},
                              {"gamma", {1, -2}},
                              {"eta", {0, 1}},
                              {"n_max", 10},
                              {"j_max", 6}},
                         Json{{"type", "tight"},
                              {"e", "e"},
                              {"f", "e~"},
                              {"edge_ball_radius", 2},
                              {"nearest_radius", 2}},
                         Json{{"type", "hat"}, {"r_max", 3}}};
        s.budgets.radius = 6;
    } else if (id == "g4-bs-amalgam") {
        s.title = "two BS(1,2) pieces amalgamated along the distorted Z";
        s.vertices = {{"v", gspec_bs12({"x", "t"})}, {"w", gspec_bs12({"x", "t"})}};
        s.edges = {edge("e", "v", "w", gspec_free_abelian(1, {"a"}),
                        "cyclic-root", {egen(0)}, "cyclic-root", {egen(0)})};
        s.subgroups = {subgroup("x-axis", "v", "cyclic-root",
                                gspec_free_abelian(1, {"a"}), {egen(0)})};
        s.experiments = {Json{{"type", "disto"}, {"subgroup", "x-axis"}, {"n_max", 10}},
                         Json{{"type", "seemingly"}, {"path_len_max", 2}, {"edge_ball_radius", 3}},
                         Json{{"type", "hat"}, {"r_max", 3}}};
        s.budgets.radius = 10;
        s.budgets.elements = 2'000'000;
    } else if (id == "g5-loose") {
        s.title = "polynomially fibered piece against a free piece";
        Json fib = Json{{"kind", "free-by-cyclic"},
                        {"rank", 3},
                        {"images", {{1, 2, 2, 3, 3, 3}, {2, 3, 3, 3, 3}, {3}}},
                        {"names", {"x1", "x2", "x3", "t"}}};
        s.vertices = {{"v", fib}, {"w", gspec_free(4, {"x1", "x2", "x3", "s"})}};
        s.edges = {edge("e", "v", "w", gspec_free(3, {"a1", "a2", "a3"}),
                        "stallings", {eword({1}), eword({2}), eword({3})},
                        "fiber-projection", {eword({1}), eword({2}), eword({3})})};
        s.subgroups = {subgroup("fiber", "v", "fiber-projection",
                                gspec_free(3, {"h1", "h2", "h3"}),
                                {eword({1}), eword({2}), eword({3})})};
        s.experiments = {Json{{"type", "witness-disto"},
                              {"subgroup", "fiber"},
                              {"t", egen(3)},
                              {"h0", eword({1})},
                              {"n_max", 12}},
                         Json{{"type", "seemingly"}, {"path_len_max", 1}, {"edge_ball_radius", 2}},
                         Json{{"type", "hat"}, {"r_max", 2}}};
        s.budgets.radius = 12;
    } else if (id == "oneedge") {
        s.title = "one edge between a torus piece and a BS(1,2) piece";
        s.vertices = {{"v", gspec_free_abelian(2, {"a", "b"})},
                      {"w", gspec_bs12({"x", "y"})}};
        s.edges = {edge("e", "v", "w", gspec_free_abelian(1, {"t"}),
                        "cyclic-root", {egen(0)}, "integer-lattice", {evec({1, 0})})};
        s.experiments = {Json{{"type", "crossing"}, {"edge", "e"}, {"n_max", 10}},
                         Json{{"type", "seemingly"}, {"path_len_max", 2}, {"edge_ball_radius", 4}},
                         Json{{"type", "hat"}, {"r_max", 3}}};
        s.budgets.radius = 10;
    } else if (id == "seemexp") {
        s.title = "seemingly polynomial edge ratios, exponential distortion";
        s.vertices = {{"v", gspec_free(2, {"x1", "x3"})}, {"w", gspec_free(2, {"y2", "y3"})}};
        s.edges = {edge("e", "v", "w", gspec_free(2, {"a", "b"}),
                        "stallings", {eword({2, 1, -2}), eword({1, 1})},
                        "stallings", {eword({1, 1}), eword({2, 1, -2})})};
        s.experiments = {Json{{"type", "identity"},
                              {"edge", "e"},
                              {"w_elem", egen(1)},
                              {"v_elem", egen(1)},
                              {"base", egen(0)},
                              {"n", {2, 3, 4, 5, 6}}},
                         Json{{"type", "seemingly"}, {"path_len_max", 2}, {"edge_ball_radius", 3}},
                         Json{{"type", "hat"}, {"r_max", 3}}};
        s.budgets.radius = 6;
    } else if (id == "sol-lattice") {
        s.title = "Sol lattice for the cat map";
        s.group = gspec_sol_cat();
        s.subgroups = {subgroup("fiber", "group", "fiber-projection",
                                gspec_free_abelian(2, {"h1", "h2"}),
                                {evec({1, 0}), evec({0, 1})})};
        s.experiments = {Json{{"type", "anosov"},
                              {"matrix", {2, 1, 1, 1}},
                              {"gamma", {1, -2}},
                              {"eta", {0, 1}},
                              {"n_max", 12},
                              {"j_max", 6}},
                         Json{{"type", "witness-disto"},
                              {"subgroup", "fiber"},
                              {"t", egen(2)},
                              {"h0", evec({1, 0})},
                              {"n_max", 6}},
                         Json{{"type", "disto"}, {"subgroup", "fiber"}, {"n_max", 6}}};
        s.budgets.radius = 12;
    } else if (id == "free-haagerup") {
        s.title = "free group convolution ratios and separation";
        s.group = gspec_free(2, {"a", "b"});
        s.subgroups = {subgroup("a-axis", "group", "stallings",
                                gspec_free(1, {"c"}), {eword({1})}),
                       subgroup("b-axis", "group", "stallings",
                                gspec_free(1, {"c"}), {eword({2})})};
        s.experiments = {Json{{"type", "rd"},
                              {"strategy", "random-nonneg"},
                              {"r_max", 4},
                              {"samples", 25}},
                         Json{{"type", "separation"},
                              {"left", "a-axis"},
                              {"right", "b-axis"},
                              {"same", false},
                              {"u_radius", 2},
                              {"gamma_radius", 5},
                              {"search_radius", 9}}};
        s.budgets.radius = 4;
        s.budgets.samples = 25;
    } else if (id == "z2-rd") {
        s.title = "rank-two lattice: polynomial convolution growth";
        s.group = gspec_free_abelian(2, {"x", "y"});
        s.experiments = {Json{{"type", "rd"},
                              {"strategy", "folner-indicator"},
                              {"r_max", 12},
                              {"samples", 1}},
                         Json{{"type", "amenable"}, {"r", 2}, {"R", 40}}};
        s.budgets.radius = 12;
    } else {
        throw UnknownScenario(id);
    }
    return s;
}

inline Json bundled_config(const std::string& id) {
    return scenario_to_json(bundled_scenario(id));
}

} // namespace gog

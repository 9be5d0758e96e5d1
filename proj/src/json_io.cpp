#include "modelspace/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace modelspace {

namespace {

Path path_from_json(const json& j, int at = -1) {
    Path p;
    for (const auto& g : j) p.gens.push_back(g.get<int>());
    p.at = p.gens.empty() ? at : -1;
    return p;
}

json path_to_json(const Path& p) { return json(p.gens); }

} // namespace

json to_json(const FinCatPresentation& p) {
    json j;
    j["objects"] = p.objects;
    j["generators"] = json::array();
    for (const auto& g : p.generators)
        j["generators"].push_back({{"name", g.name}, {"src", g.src}, {"tgt", g.tgt}});
    j["equations"] = json::array();
    for (const auto& [lhs, rhs] : p.equations)
        j["equations"].push_back({path_to_json(lhs), path_to_json(rhs)});
    return j;
}

FinCatPresentation fincat_from_json(const json& j) {
    FinCatPresentation p;
    for (const auto& o : j.at("objects")) p.objects.push_back(o.get<std::string>());
    if (j.contains("generators"))
        for (const auto& g : j["generators"])
            p.generators.push_back(
                {g.at("name").get<std::string>(), g.at("src").get<int>(), g.at("tgt").get<int>()});
    if (j.contains("equations")) {
        for (const auto& eq : j["equations"]) {
            Path lhs = path_from_json(eq.at(0));
            Path rhs = path_from_json(eq.at(1));
            // An empty side is the identity at the other side's endpoint.
            if (lhs.empty() && rhs.empty())
                throw MalformedInput("equation with two empty sides has no stated object");
            if (lhs.empty()) lhs.at = p.generators.at(rhs.gens.front()).src;
            if (rhs.empty()) rhs.at = p.generators.at(lhs.gens.front()).src;
            p.equations.emplace_back(std::move(lhs), std::move(rhs));
        }
    }
    validate_presentation(p);
    return p;
}

json to_json(const FinFunctor& f) {
    json j;
    j["dom"] = to_json(*f.dom);
    j["cod"] = to_json(*f.cod);
    j["object_map"] = f.object_map;
    j["generator_map"] = json::array();
    for (const auto& p : f.generator_map) j["generator_map"].push_back(path_to_json(p));
    j["validity"] = f.validity == EqCheck::verified ? "verified" : "unverified";
    return j;
}

FinFunctor functor_from_json(const json& j) {
    FinCatPtr dom = make_fincat(fincat_from_json(j.at("dom")));
    FinCatPtr cod = make_fincat(fincat_from_json(j.at("cod")));
    return functor_from_json(j, dom, cod);
}

FinFunctor functor_from_json(const json& j, FinCatPtr dom, FinCatPtr cod) {
    FinFunctor f;
    f.dom = std::move(dom);
    f.cod = std::move(cod);
    for (const auto& o : j.at("object_map")) f.object_map.push_back(o.get<int>());
    for (size_t g = 0; g < j.at("generator_map").size(); ++g) {
        Path p = path_from_json(j["generator_map"][g]);
        if (p.empty()) p.at = f.object_map.at(f.dom->generators.at(g).src);
        f.generator_map.push_back(std::move(p));
    }
    check_functor_structure(f);
    Tri t = verify_functor(f);
    if (t == Tri::distinct) throw MalformedInput("functor does not preserve equations");
    f.validity = t == Tri::equal ? EqCheck::verified : EqCheck::unverified;
    return f;
}

// ---------------------------------------------------------------------------
// C-sets
// ---------------------------------------------------------------------------

json to_json(const CSet& x) {
    json j;
    if (*x.schema == *petri_schema())
        j["schema"] = "petri";
    else
        j["schema"] = to_json(*x.schema);
    j["parts"] = json::object();
    for (size_t c = 0; c < x.parts.size(); ++c) j["parts"][x.schema->objects[c]] = x.parts[c];
    j["actions"] = json::object();
    for (size_t g = 0; g < x.actions.size(); ++g)
        j["actions"][x.schema->generators[g].name] = x.actions[g];
    return j;
}

CSet cset_from_json(const json& j) {
    CSet x;
    const json& sj = j.at("schema");
    if (sj.is_string()) {
        if (sj.get<std::string>() != "petri")
            throw MalformedInput("unknown named schema: " + sj.get<std::string>());
        x.schema = petri_schema();
    } else {
        x.schema = make_fincat(fincat_from_json(sj));
    }
    x.parts.assign(x.schema->objects.size(), 0);
    for (const auto& [name, v] : j.at("parts").items()) {
        int c = x.schema->object_index(name);
        if (c < 0) throw MalformedInput("unknown schema object in parts: " + name);
        x.parts[c] = v.get<int>();
    }
    x.actions.resize(x.schema->generators.size());
    for (const auto& [name, v] : j.at("actions").items()) {
        int g = x.schema->generator_index(name);
        if (g < 0) throw MalformedInput("unknown schema generator in actions: " + name);
        x.actions[g] = v.get<std::vector<int>>();
    }
    auto errs = validate(x);
    if (!errs.empty()) throw MalformedInput("invalid C-set: " + errs[0]);
    return x;
}

json components_to_json(const FinCatPresentation& schema,
                        const std::vector<std::vector<int>>& components) {
    json j = json::object();
    for (size_t c = 0; c < components.size(); ++c) j[schema.objects[c]] = components[c];
    return j;
}

std::vector<std::vector<int>> components_from_json(const FinCatPresentation& schema,
                                                   const json& j) {
    std::vector<std::vector<int>> comps(schema.objects.size());
    for (const auto& [name, v] : j.items()) {
        int c = schema.object_index(name);
        if (c < 0) throw MalformedInput("unknown schema object in components: " + name);
        comps[c] = v.get<std::vector<int>>();
    }
    return comps;
}

// ---------------------------------------------------------------------------
// Diagrams
// ---------------------------------------------------------------------------

json to_json(const Diagram& d) {
    json j;
    j["shape"] = to_json(*d.shape);
    j["ob"] = json::object();
    for (size_t i = 0; i < d.ob.size(); ++i) j["ob"][d.shape->objects[i]] = to_json(d.ob[i]);
    j["hom"] = json::object();
    for (size_t g = 0; g < d.hom.size(); ++g)
        j["hom"][d.shape->generators[g].name] = {
            {"components", components_to_json(*d.ob[0].schema, d.hom[g].components)}};
    return j;
}

Diagram diagram_from_json(const json& j) {
    Diagram d;
    d.shape = make_fincat(fincat_from_json(j.at("shape")));
    d.ob.resize(d.shape->objects.size());
    for (const auto& [name, v] : j.at("ob").items()) {
        int i = d.shape->object_index(name);
        if (i < 0) throw MalformedInput("unknown shape object in ob: " + name);
        d.ob[i] = cset_from_json(v);
    }
    d.hom.resize(d.shape->generators.size());
    for (const auto& [name, v] : j.at("hom").items()) {
        int g = d.shape->generator_index(name);
        if (g < 0) throw MalformedInput("unknown shape generator in hom: " + name);
        CSetMorphism m;
        m.dom = d.ob[d.shape->generators[g].src];
        m.cod = d.ob[d.shape->generators[g].tgt];
        m.components = components_from_json(*m.dom.schema, v.at("components"));
        d.hom[g] = std::move(m);
    }
    validate_diagram(d);
    return d;
}

json to_json(const TypedDiagram& t) {
    json j;
    j["diagram"] = to_json(t.diagram);
    j["base"] = to_json(t.base);
    j["typing"] = json::object();
    for (size_t i = 0; i < t.typing.size(); ++i)
        j["typing"][t.diagram.shape->objects[i]] =
            components_to_json(*t.base.schema, t.typing[i].components);
    return j;
}

TypedDiagram typed_diagram_from_json(const json& j) {
    TypedDiagram t;
    t.diagram = diagram_from_json(j.at("diagram"));
    t.base = cset_from_json(j.at("base"));
    t.typing.resize(t.diagram.ob.size());
    for (const auto& [name, v] : j.at("typing").items()) {
        int i = t.diagram.shape->object_index(name);
        if (i < 0) throw MalformedInput("unknown shape object in typing: " + name);
        CSetMorphism m;
        m.dom = t.diagram.ob[i];
        m.cod = t.base;
        m.components = components_from_json(*t.base.schema, v);
        t.typing[i] = std::move(m);
    }
    validate_typed_diagram(t);
    return t;
}

// ---------------------------------------------------------------------------
// Model spaces
// ---------------------------------------------------------------------------

json to_json(const NodeMeta& m) {
    json j;
    j["species"] = m.species;
    j["transitions"] = m.transitions;
    j["observable"] = {
        {"components", components_to_json(*m.obs.morphism.dom.schema, m.obs.morphism.components)},
        {"cod", to_json(m.obs.morphism.cod)},
        {"cod_species", m.obs.cod_species}};
    if (!m.species_coords.empty()) j["coords"] = m.species_coords;
    return j;
}

NodeMeta node_meta_from_json(const json& j, const CSet& node_net) {
    NodeMeta m;
    m.species = j.at("species").get<std::vector<std::string>>();
    m.transitions = j.at("transitions").get<std::vector<std::string>>();
    const json& ob = j.at("observable");
    m.obs.morphism.dom = node_net;
    m.obs.morphism.cod = cset_from_json(ob.at("cod"));
    m.obs.morphism.components = components_from_json(*node_net.schema, ob.at("components"));
    m.obs.cod_species = ob.at("cod_species").get<std::vector<std::string>>();
    if (j.contains("coords"))
        m.species_coords = j["coords"].get<std::vector<std::vector<std::string>>>();
    return m;
}

json to_json(const ModelSpace& ms) {
    json j;
    j["space"] = to_json(ms.space);
    j["meta"] = json::object();
    for (size_t i = 0; i < ms.meta.size(); ++i)
        j["meta"][ms.space.diagram.shape->objects[i]] = to_json(ms.meta[i]);
    return j;
}

ModelSpace model_space_from_json(const json& j) {
    ModelSpace ms;
    ms.space = typed_diagram_from_json(j.at("space"));
    ms.meta.resize(ms.space.diagram.ob.size());
    for (const auto& [name, v] : j.at("meta").items()) {
        int i = ms.space.diagram.shape->object_index(name);
        if (i < 0) throw MalformedInput("unknown node in meta: " + name);
        ms.meta[i] = node_meta_from_json(v, ms.space.diagram.ob[i]);
    }
    validate_model_space(ms);
    return ms;
}

namespace {

json morphism_between(const DiagramMorphism& m) {
    json j;
    j["shape_map"] = {{"object_map", m.shape_map.object_map},
                      {"generator_map", json::array()}};
    for (const auto& p : m.shape_map.generator_map)
        j["shape_map"]["generator_map"].push_back(path_to_json(p));
    j["phi"] = json::object();
    for (size_t i = 0; i < m.phi.size(); ++i)
        j["phi"][m.dom.shape->objects[i]] =
            components_to_json(*m.dom.ob[0].schema, m.phi[i].components);
    return j;
}

DiagramMorphism morphism_between_from_json(const json& j, const Diagram& dom,
                                           const Diagram& cod) {
    DiagramMorphism m;
    m.dom = dom;
    m.cod = cod;
    m.shape_map.dom = dom.shape;
    m.shape_map.cod = cod.shape;
    m.shape_map.object_map = j.at("shape_map").at("object_map").get<std::vector<int>>();
    const json& gm = j.at("shape_map").at("generator_map");
    for (size_t g = 0; g < gm.size(); ++g) {
        Path p = path_from_json(gm[g]);
        if (p.empty()) p.at = m.shape_map.object_map.at(dom.shape->generators.at(g).src);
        m.shape_map.generator_map.push_back(std::move(p));
    }
    m.phi.resize(dom.ob.size());
    for (const auto& [name, v] : j.at("phi").items()) {
        int i = dom.shape->object_index(name);
        if (i < 0) throw MalformedInput("unknown node in phi: " + name);
        CSetMorphism c;
        c.dom = dom.ob[i];
        c.cod = cod.ob[m.shape_map.object_map[i]];
        c.components = components_from_json(*c.dom.schema, v);
        m.phi[i] = std::move(c);
    }
    validate_diagram_morphism(m);
    return m;
}

} // namespace

json to_json(const TypedSpan& s) {
    json j;
    ModelSpace apex{s.apex, s.apex_meta};
    j["apex"] = to_json(apex);
    j["left_cod"] = to_json(s.left_cod);
    j["right_cod"] = to_json(s.right_cod);
    j["left"] = morphism_between(s.left);
    j["right"] = morphism_between(s.right);
    return j;
}

TypedSpan span_from_json(const json& j) {
    TypedSpan s;
    ModelSpace apex = model_space_from_json(j.at("apex"));
    s.apex = apex.space;
    s.apex_meta = apex.meta;
    s.left_cod = model_space_from_json(j.at("left_cod"));
    s.right_cod = model_space_from_json(j.at("right_cod"));
    s.left = morphism_between_from_json(j.at("left"), s.apex.diagram, s.left_cod.space.diagram);
    s.right = morphism_between_from_json(j.at("right"), s.apex.diagram, s.right_cod.space.diagram);
    return s;
}

json to_json(const MorphismArtifact& m) {
    json j;
    j["dom"] = to_json(m.dom_space);
    j["cod"] = to_json(m.cod_space);
    j["morphism"] = morphism_between(m.m);
    return j;
}

MorphismArtifact morphism_artifact_from_json(const json& j) {
    MorphismArtifact m;
    m.dom_space = model_space_from_json(j.at("dom"));
    m.cod_space = model_space_from_json(j.at("cod"));
    m.m = morphism_between_from_json(j.at("morphism"), m.dom_space.space.diagram,
                                     m.cod_space.space.diagram);
    return m;
}

// ---------------------------------------------------------------------------
// Petri nets and parameters
// ---------------------------------------------------------------------------

json to_json(const PetriNet& net) {
    json j = to_json(net.cs);
    j["names"] = {{"species", net.species}, {"transitions", net.transitions}};
    return j;
}

PetriNet petri_from_json(const json& j) {
    CSet cs = cset_from_json(j);
    std::vector<std::string> species, transitions;
    if (j.contains("names")) {
        species = j["names"].at("species").get<std::vector<std::string>>();
        transitions = j["names"].at("transitions").get<std::vector<std::string>>();
    }
    return petri_from_cset(cs, species, transitions);
}

json params_to_json(const ParamSet& p, const PetriNet& net) {
    json j;
    j["concentrations"] = json::object();
    for (size_t s = 0; s < p.concentrations.size(); ++s)
        j["concentrations"][net.species[s]] = p.concentrations[s];
    j["rates"] = json::object();
    for (size_t t = 0; t < p.rates.size(); ++t) j["rates"][net.transitions[t]] = p.rates[t];
    return j;
}

ParamSet params_from_json(const json& j, const PetriNet& net) {
    ParamSet p;
    p.concentrations.assign(net.n_species(), 0.0);
    p.rates.assign(net.n_transitions(), 0.0);
    for (const auto& [name, v] : j.at("concentrations").items()) {
        int s = net.species_index(name);
        if (s < 0) throw MalformedInput("unknown species in params: " + name);
        p.concentrations[s] = v.get<double>();
    }
    for (const auto& [name, v] : j.at("rates").items()) {
        int t = net.transition_index(name);
        if (t < 0) throw MalformedInput("unknown transition in params: " + name);
        p.rates[t] = v.get<double>();
    }
    check_params(net, p);
    return p;
}

// ---------------------------------------------------------------------------
// Selection
// ---------------------------------------------------------------------------

FitConfig fit_config_from_json(const json& j) {
    FitConfig cfg;
    if (j.contains("optimizer")) {
        std::string o = j["optimizer"].get<std::string>();
        if (o == "nelder-mead")
            cfg.optimizer = FitConfig::Optimizer::nelder_mead;
        else if (o == "finite-difference-gradient-descent" || o == "fd-gradient")
            cfg.optimizer = FitConfig::Optimizer::fd_gradient;
        else
            throw MalformedInput("unknown optimizer: " + o);
    }
    if (j.contains("max_evals")) cfg.max_evals = j["max_evals"].get<int>();
    if (j.contains("restarts")) cfg.restarts = j["restarts"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("dt")) cfg.dt = j["dt"].get<double>();
    if (j.contains("t0")) cfg.t0 = j["t0"].get<double>();
    if (j.contains("reference")) cfg.reference_node = j["reference"].get<std::string>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    if (j.contains("root_rate_init")) cfg.root_rate_init = j["root_rate_init"].get<double>();
    if (j.contains("prior")) {
        const json& p = j["prior"];
        if (p.contains("total")) cfg.prior_total = p["total"].get<double>();
        if (p.contains("marginals"))
            for (const auto& m : p["marginals"])
                cfg.prior_marginals.push_back(m.get<std::map<std::string, double>>());
    }
    if (cfg.max_evals < 0 || cfg.restarts < 0 || cfg.dt <= 0 || cfg.threads < 1)
        throw MalformedInput("fit config: budgets must be positive");
    return cfg;
}

json to_json(const FitReport& r, const ModelSpace& ms) {
    json j;
    j["reference"] = r.reference;
    j["seed"] = r.seed;
    j["nodes"] = json::array();
    for (const auto& nf : r.nodes) {
        int i = ms.node_index(nf.node);
        PetriNet net = ms.node_net(i);
        j["nodes"].push_back({{"node", nf.node},
                              {"raw_loss", nf.raw_loss},
                              {"normalized_loss", nf.normalized},
                              {"order", nf.order_index},
                              {"warm_start", nf.warm_start},
                              {"params", params_to_json(nf.best, net)}});
    }
    j["audit"] = json::array();
    for (const auto& a : r.audit)
        j["audit"].push_back({{"edge", a.edge},
                              {"src", a.src},
                              {"tgt", a.tgt},
                              {"loss_src", a.loss_src},
                              {"loss_tgt", a.loss_tgt}});
    return j;
}

// ---------------------------------------------------------------------------
// Workflows
// ---------------------------------------------------------------------------

std::string port_type_name(PortType t) {
    switch (t) {
        case PortType::DiagramOverX: return "DiagramOverX";
        case PortType::Morphism: return "DiagramMorphism";
        case PortType::Span: return "SpanOfDiagrams";
        case PortType::CSetArtifact: return "CSet";
        case PortType::Base: return "Base";
    }
    return "?";
}

PortType parse_port_type(const std::string& s) {
    if (s == "DiagramOverX") return PortType::DiagramOverX;
    if (s == "DiagramMorphism") return PortType::Morphism;
    if (s == "SpanOfDiagrams") return PortType::Span;
    if (s == "CSet") return PortType::CSetArtifact;
    if (s == "Base") return PortType::Base;
    throw MalformedInput("unknown port type: " + s);
}

json to_json(const Workflow& w) {
    json j;
    j["boxes"] = json::array();
    for (const auto& b : w.boxes)
        j["boxes"].push_back({{"id", b.id}, {"op", b.op}, {"config", b.config}});
    j["wires"] = json::array();
    for (const auto& wi : w.wires)
        j["wires"].push_back({{"from", wi.from_box + "." + wi.from_port},
                              {"to", wi.to_box + "." + wi.to_port}});
    j["inputs"] = json::object();
    for (const auto& [name, decl] : w.inputs)
        j["inputs"][name] = {{"type", port_type_name(decl.type)}, {"file", decl.file}};
    j["outputs"] = w.outputs;
    return j;
}

namespace {

std::pair<std::string, std::string> split_port(const std::string& s) {
    auto dot = s.rfind('.');
    if (dot == std::string::npos)
        throw MalformedInput("port reference must be 'box.port': " + s);
    return {s.substr(0, dot), s.substr(dot + 1)};
}

} // namespace

Workflow workflow_from_json(const json& j) {
    Workflow w;
    for (const auto& b : j.at("boxes"))
        w.boxes.push_back({b.at("id").get<std::string>(), b.at("op").get<std::string>(),
                           b.contains("config") ? b["config"] : json::object()});
    if (j.contains("wires"))
        for (const auto& wi : j["wires"]) {
            auto [fb, fp] = split_port(wi.at("from").get<std::string>());
            auto [tb, tp] = split_port(wi.at("to").get<std::string>());
            w.wires.push_back({fb, fp, tb, tp});
        }
    if (j.contains("inputs"))
        for (const auto& [name, decl] : j["inputs"].items())
            w.inputs[name] = {parse_port_type(decl.at("type").get<std::string>()),
                              decl.value("file", name + ".json")};
    if (j.contains("outputs"))
        for (const auto& o : j["outputs"]) w.outputs.push_back(o.get<std::string>());
    return w;
}

// ---------------------------------------------------------------------------
// CSV and DOT
// ---------------------------------------------------------------------------

std::string timeseries_to_csv(const TimeSeries& ts) {
    std::string out = "t";
    for (const auto& c : ts.columns) out += "," + c;
    out += "\n";
    for (size_t r = 0; r < ts.times.size(); ++r) {
        out += fmt::format("{}", ts.times[r]);
        for (double v : ts.values[r]) out += fmt::format(",{}", v);
        out += "\n";
    }
    return out;
}

TimeSeries timeseries_from_csv(const std::string& text) {
    TimeSeries ts;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw MalformedInput("empty CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream header(line);
    std::string cell;
    bool first = true;
    while (std::getline(header, cell, ',')) {
        if (first) {
            if (cell != "t") throw MalformedInput("CSV header must start with 't'");
            first = false;
        } else {
            ts.columns.push_back(cell);
        }
    }
    if (first) throw MalformedInput("CSV header must start with 't'");
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::vector<double> vals;
        while (std::getline(row, cell, ',')) {
            try {
                size_t used = 0;
                double v = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
                vals.push_back(v);
            } catch (const std::exception&) {
                throw MalformedInput(
                    fmt::format("CSV line {}: '{}' is not a number", lineno, cell));
            }
        }
        if (vals.size() != ts.columns.size() + 1)
            throw MalformedInput(fmt::format("CSV line {}: wrong number of cells", lineno));
        if (!ts.times.empty() && vals[0] <= ts.times.back())
            throw MalformedInput(fmt::format("CSV line {}: times must increase", lineno));
        ts.times.push_back(vals[0]);
        ts.values.emplace_back(vals.begin() + 1, vals.end());
    }
    if (ts.times.empty()) throw MalformedInput("CSV has no data rows");
    return ts;
}

std::string trajectory_csv(const Trajectory& tr, const std::vector<double>& at_times,
                           const ObservableMap& obs, const std::vector<std::string>& columns) {
    std::string out = "t";
    for (const auto& c : columns) out += "," + c;
    out += "\n";
    for (double t : at_times) {
        std::vector<double> x = tr.sample(t);
        out += fmt::format("{}", t);
        for (const auto& c : columns) {
            double v = 0;
            for (size_t s = 0; s < obs.morphism.components[PETRI_S].size(); ++s)
                if (obs.cod_species[obs.morphism.components[PETRI_S][s]] == c) v += x[s];
            out += fmt::format(",{}", v);
        }
        out += "\n";
    }
    return out;
}

std::string loss_table_csv(const FitReport& r) {
    std::string out = "node,raw_loss,normalized_loss,order\n";
    std::vector<const NodeFit*> sorted;
    for (const auto& nf : r.nodes) sorted.push_back(&nf);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const NodeFit* a, const NodeFit* b) {
                         return a->order_index < b->order_index;
                     });
    for (const NodeFit* nf : sorted)
        out += fmt::format("{},{},{},{}\n", nf->node, nf->raw_loss, nf->normalized,
                           nf->order_index);
    return out;
}

std::string shape_to_dot(const FinCatPresentation& shape) {
    std::string out = "digraph shape {\n";
    for (size_t i = 0; i < shape.objects.size(); ++i)
        out += fmt::format("  n{} [label=\"{}\"];\n", i, shape.objects[i]);
    for (const auto& g : shape.generators)
        out += fmt::format("  n{} -> n{} [label=\"{}\"];\n", g.src, g.tgt, g.name);
    out += "}\n";
    return out;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw MalformedInput(fmt::format("{}: {}", path, e.what()));
    }
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw MalformedInput("cannot write file: " + path);
    out << content;
}

} // namespace modelspace

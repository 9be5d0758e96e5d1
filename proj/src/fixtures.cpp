#include "modelspace/fixtures.hpp"

#include <fmt/format.h>

namespace modelspace::fixtures {

namespace {
constexpr int INT = 0, DIS = 1, TRAV = 2;
}

PetriNet sir() {
    return make_petri({"S", "I", "R"}, {{"inf", {0, 1}, {1, 1}}, {"rec", {1}, {2}}});
}

PetriNet sirs() {
    return make_petri({"S", "I", "R"},
                      {{"inf", {0, 1}, {1, 1}}, {"rec", {1}, {2}}, {"reinf", {2}, {0}}});
}

PetriNet sird() {
    return make_petri({"S", "I", "R", "D"},
                      {{"inf", {0, 1}, {1, 1}}, {"rec", {1}, {2}}, {"death", {1}, {3}}});
}

PetriNet sirsd() {
    return make_petri({"S", "I", "R", "D"}, {{"inf", {0, 1}, {1, 1}},
                                             {"rec", {1}, {2}},
                                             {"reinf", {2}, {0}},
                                             {"death", {1}, {3}}});
}

PetriNet death_net() { return make_petri({"I", "D"}, {{"death", {0}, {1}}}); }

PetriNet apex_x() {
    return make_petri({"*"}, {{"int", {0, 0}, {0, 0}}, {"dis", {0}, {0}}, {"trav", {0}, {0}}});
}

namespace {

// Appends one transport loop per species.
PetriNet with_transport(const PetriNet& base) {
    std::vector<TransitionSpec> ts;
    for (int t = 0; t < base.n_transitions(); ++t) {
        TransitionSpec spec;
        spec.name = base.transitions[t];
        for (int a = 0; a < base.cs.parts[PETRI_I]; ++a)
            if (base.cs.actions[1][a] == t) spec.inputs.push_back(base.cs.actions[0][a]);
        for (int a = 0; a < base.cs.parts[PETRI_O]; ++a)
            if (base.cs.actions[3][a] == t) spec.outputs.push_back(base.cs.actions[2][a]);
        ts.push_back(std::move(spec));
    }
    for (int s = 0; s < base.n_species(); ++s)
        ts.push_back({fmt::format("t{}", base.species[s]), {s}, {s}});
    return make_petri(base.species, ts);
}

} // namespace

PetriNet sir_t() { return with_transport(sir()); }
PetriNet sirs_t() { return with_transport(sirs()); }
PetriNet sird_t() { return with_transport(sird()); }
PetriNet sirsd_t() { return with_transport(sirsd()); }

PetriNet death_net_t() {
    return make_petri({"I", "D"}, {{"death", {0}, {1}}, {"tD", {1}, {1}}});
}

PetriNet city(int n) {
    if (n < 1 || n > 3) throw MalformedInput("city: supported sizes are 1..3");
    static const std::vector<std::string> names = {"X", "Y", "Z"};
    std::vector<std::string> species(names.begin(), names.begin() + n);
    std::vector<TransitionSpec> ts;
    for (int c = 0; c < n; ++c) ts.push_back({fmt::format("int_{}", names[c]), {c, c}, {c, c}});
    for (int c = 0; c < n; ++c) ts.push_back({fmt::format("dis_{}", names[c]), {c}, {c}});
    for (int c = 0; c + 1 < n; ++c) {
        ts.push_back({fmt::format("trav_{}{}", names[c], names[c + 1]), {c}, {c + 1}});
        ts.push_back({fmt::format("trav_{}{}", names[c + 1], names[c]), {c + 1}, {c}});
    }
    return make_petri(species, ts);
}

CSetMorphism petri_morphism(const PetriNet& dom, const PetriNet& cod,
                            const std::vector<int>& species_map,
                            const std::vector<int>& transition_map) {
    CSetMorphism f;
    f.dom = dom.cs;
    f.cod = cod.cs;
    f.components.resize(4);
    f.components[PETRI_S] = species_map;
    f.components[PETRI_T] = transition_map;
    f.components[PETRI_I].assign(dom.cs.parts[PETRI_I], -1);
    f.components[PETRI_O].assign(dom.cs.parts[PETRI_O], -1);

    // Arc matching: per dom transition, in declaration order, each cod arc of
    // the image transition is used at most once.
    for (int kind = 0; kind < 2; ++kind) {
        int obj = kind == 0 ? PETRI_I : PETRI_O;
        int sp_act = kind == 0 ? 0 : 2;
        int tr_act = kind == 0 ? 1 : 3;
        for (int t = 0; t < dom.n_transitions(); ++t) {
            std::vector<char> used(cod.cs.parts[obj], 0);
            for (int a = 0; a < dom.cs.parts[obj]; ++a) {
                if (dom.cs.actions[tr_act][a] != t) continue;
                int want_s = species_map[dom.cs.actions[sp_act][a]];
                int want_t = transition_map[t];
                int pick = -1;
                for (int b = 0; b < cod.cs.parts[obj]; ++b) {
                    if (used[b] || cod.cs.actions[tr_act][b] != want_t ||
                        cod.cs.actions[sp_act][b] != want_s)
                        continue;
                    pick = b;
                    break;
                }
                if (pick < 0)
                    throw MalformedInput(fmt::format(
                        "petri_morphism: no arc match for transition '{}'", dom.transitions[t]));
                used[pick] = 1;
                f.components[obj][a] = pick;
            }
        }
    }
    if (!is_natural(f)) throw InternalError("petri_morphism: produced a non-natural morphism");
    return f;
}

CSetMorphism inclusion_by_names(const PetriNet& dom, const PetriNet& cod) {
    std::vector<int> smap, tmap;
    for (const auto& s : dom.species) {
        int i = cod.species_index(s);
        if (i < 0) throw MalformedInput("inclusion_by_names: missing species " + s);
        smap.push_back(i);
    }
    for (const auto& t : dom.transitions) {
        int i = cod.transition_index(t);
        if (i < 0) throw MalformedInput("inclusion_by_names: missing transition " + t);
        tmap.push_back(i);
    }
    return petri_morphism(dom, cod, smap, tmap);
}

CSetMorphism typing_to_x(const PetriNet& net, const std::vector<int>& transition_types) {
    PetriNet x = apex_x();
    std::vector<int> smap(net.n_species(), 0);
    return petri_morphism(net, x, smap, transition_types);
}

// ---------------------------------------------------------------------------
// Typed spaces
// ---------------------------------------------------------------------------

namespace {

std::vector<int> disease_types(const PetriNet& net) {
    std::vector<int> types;
    for (const auto& t : net.transitions) {
        if (t == "inf")
            types.push_back(INT);
        else if (t == "rec" || t == "reinf" || t == "death")
            types.push_back(DIS);
        else
            types.push_back(TRAV); // transport loops
    }
    return types;
}

std::vector<int> city_types(const PetriNet& net) {
    std::vector<int> types;
    for (const auto& t : net.transitions) {
        if (t.rfind("int_", 0) == 0)
            types.push_back(INT);
        else if (t.rfind("dis_", 0) == 0)
            types.push_back(DIS);
        else
            types.push_back(TRAV);
    }
    return types;
}

ModelSpace path_space(const std::vector<std::string>& node_names,
                      const std::vector<PetriNet>& nets,
                      const std::vector<std::vector<int>>& types) {
    FinCatPresentation shape;
    shape.objects = node_names;
    for (size_t i = 0; i + 1 < node_names.size(); ++i)
        shape.generators.push_back({fmt::format("e{}", i), static_cast<int>(i),
                                    static_cast<int>(i) + 1});
    ModelSpace ms;
    ms.space.diagram.shape = make_fincat(std::move(shape));
    ms.space.base = apex_x().cs;
    for (size_t i = 0; i < nets.size(); ++i) {
        ms.space.diagram.ob.push_back(nets[i].cs);
        ms.space.typing.push_back(typing_to_x(nets[i], types[i]));
        NodeMeta m;
        m.species = nets[i].species;
        m.transitions = nets[i].transitions;
        m.obs = identity_observable(nets[i]);
        ms.meta.push_back(std::move(m));
    }
    for (size_t i = 0; i + 1 < nets.size(); ++i)
        ms.space.diagram.hom.push_back(inclusion_by_names(nets[i], nets[i + 1]));
    validate_model_space(ms);
    return ms;
}

} // namespace

ModelSpace disease_path2() {
    PetriNet a = sir_t(), b = sirs_t();
    return path_space({"SIR", "SIRS"}, {a, b}, {disease_types(a), disease_types(b)});
}

ModelSpace disease_path3() {
    PetriNet a = sir_t(), b = sirs_t(), c = sirsd_t();
    return path_space({"SIR", "SIRS", "SIRSD"}, {a, b, c},
                      {disease_types(a), disease_types(b), disease_types(c)});
}

ModelSpace geography_path(int n) {
    std::vector<std::string> names;
    std::vector<PetriNet> nets;
    std::vector<std::vector<int>> types;
    for (int k = 1; k <= n; ++k) {
        names.push_back(std::to_string(k));
        nets.push_back(city(k));
        types.push_back(city_types(nets.back()));
    }
    return path_space(names, nets, types);
}

ModelSpace single_node_space(const PetriNet& net, const std::vector<int>& transition_types,
                             const std::string& node_name) {
    return path_space({node_name}, {net}, {transition_types});
}

TypedSpan death_span() {
    TypedSpan span;
    PetriNet apex_net = make_petri({"I"}, {});
    ModelSpace apex = single_node_space(apex_net, {}, "I");
    span.apex = apex.space;
    span.apex_meta = apex.meta;
    span.left_cod = disease_path2();
    PetriNet dn = death_net_t();
    span.right_cod = single_node_space(dn, {DIS, TRAV}, "DN");

    auto leg = [&](const ModelSpace& cod, int node, const PetriNet& cod_net) {
        DiagramMorphism m;
        m.dom = span.apex.diagram;
        m.cod = cod.space.diagram;
        m.shape_map.dom = span.apex.diagram.shape;
        m.shape_map.cod = cod.space.diagram.shape;
        m.shape_map.object_map = {node};
        m.phi = {petri_morphism(apex_net, cod_net,
                                {cod_net.species_index("I")}, {})};
        validate_diagram_morphism(m);
        return m;
    };
    span.left = leg(span.left_cod, span.left_cod.node_index("SIR"), sir_t());
    span.right = leg(span.right_cod, 0, dn);
    return span;
}

Workflow exploration_workflow() {
    Workflow w;
    w.inputs["disease_path"] = {PortType::DiagramOverX, "disease_path.json"};
    w.inputs["death_span"] = {PortType::Span, "death_span.json"};
    w.inputs["geography_path"] = {PortType::DiagramOverX, "geography_path.json"};

    w.boxes.push_back({"load_disease", "load", {{"input", "disease_path"}}});
    w.boxes.push_back({"load_span", "load", {{"input", "death_span"}}});
    w.boxes.push_back({"load_geo", "load", {{"input", "geography_path"}}});
    w.boxes.push_back(
        {"glue_death", "glue",
         {{"rename", {{"in0_SIR", "SIRD"}, {"in0_SIRS", "SIRSD"}}}}});
    w.boxes.push_back(
        {"add_original", "coproduct",
         {{"rename",
           {{"in0_SIR", "SIR"}, {"in0_SIRS", "SIRS"}, {"in1_SIRD", "SIRD"},
            {"in1_SIRSD", "SIRSD"}}}}});
    w.boxes.push_back({"stratify", "typed_product", {{"observable", "a"}}});

    w.wires.push_back({"load_disease", "out", "glue_death", "base"});
    w.wires.push_back({"load_span", "out", "glue_death", "span"});
    w.wires.push_back({"load_disease", "out", "add_original", "a"});
    w.wires.push_back({"glue_death", "out", "add_original", "b"});
    w.wires.push_back({"add_original", "out", "stratify", "a"});
    w.wires.push_back({"load_geo", "out", "stratify", "b"});
    w.outputs.push_back("stratify.out");
    return w;
}

std::map<std::string, Artifact> workflow_inputs() {
    std::map<std::string, Artifact> inputs;
    Artifact disease;
    disease.type = PortType::DiagramOverX;
    disease.space = std::make_shared<ModelSpace>(disease_path2());
    inputs["disease_path"] = disease;
    Artifact span;
    span.type = PortType::Span;
    span.span = std::make_shared<TypedSpan>(death_span());
    inputs["death_span"] = span;
    Artifact geo;
    geo.type = PortType::DiagramOverX;
    geo.space = std::make_shared<ModelSpace>(geography_path(2));
    inputs["geography_path"] = geo;
    return inputs;
}

ParamSet sird2_truth(const PetriNet& net) {
    ParamSet p;
    p.concentrations.assign(net.n_species(), 0.0);
    p.rates.assign(net.n_transitions(), 0.0);
    auto set_conc = [&](const std::string& name, double v) {
        int s = net.species_index(name);
        if (s < 0) throw MalformedInput("sird2_truth: missing species " + name);
        p.concentrations[s] = v;
    };
    set_conc("S_X", 0.99);
    set_conc("I_X", 0.01);
    set_conc("S_Y", 1.0);
    for (int t = 0; t < net.n_transitions(); ++t) {
        const std::string& name = net.transitions[t];
        if (name.rfind("inf_", 0) == 0)
            p.rates[t] = 0.5;
        else if (name.rfind("rec_", 0) == 0)
            p.rates[t] = 0.25;
        else if (name.rfind("death_", 0) == 0)
            p.rates[t] = 0.05;
        else if (name.find("trav_") != std::string::npos)
            p.rates[t] = 0.1;
        else
            throw MalformedInput("sird2_truth: unclassified transition " + name);
    }
    return p;
}

FitConfig experiment_config() {
    FitConfig cfg;
    cfg.optimizer = FitConfig::Optimizer::nelder_mead;
    cfg.max_evals = 2000;
    cfg.restarts = 3;
    cfg.seed = 20220909;
    cfg.dt = 0.01;
    cfg.reference_node = "(SIRD,2)";
    cfg.root_rate_init = 0.5;
    cfg.prior_marginals = {{{"S", 0.9}, {"I", 0.1}}, {{"X", 0.5}, {"Y", 0.5}}};
    cfg.prior_total = 1.0;
    return cfg;
}

} // namespace modelspace::fixtures

#include "modelspace/workflow.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <fmt/format.h>

#include "modelspace/json_io.hpp"
#include "modelspace/leftkan.hpp"

namespace modelspace {

PortSig box_signature(const Workflow& w, const Box& b) {
    PortSig sig;
    auto D = PortType::DiagramOverX;
    if (b.op == "load") {
        std::string input = b.config.value("input", "");
        auto it = w.inputs.find(input);
        if (it == w.inputs.end())
            throw MalformedInput(fmt::format("box '{}': unknown input name '{}'", b.id, input));
        sig.outs["out"] = it->second.type;
    } else if (b.op == "glue") {
        sig.ins["base"] = D;
        sig.ins["span"] = PortType::Span;
        sig.outs["out"] = D;
    } else if (b.op == "coproduct") {
        sig.ins["a"] = D;
        sig.ins["b"] = D;
        sig.outs["out"] = D;
    } else if (b.op == "typed_product" || b.op == "limit") {
        sig.ins["a"] = D;
        sig.ins["b"] = D;
        sig.outs["out"] = D;
    } else if (b.op == "coequalizer") {
        sig.ins["a"] = PortType::Morphism;
        sig.ins["b"] = PortType::Morphism;
        sig.outs["out"] = D;
    } else if (b.op == "leftkan") {
        sig.ins["a"] = D;
        sig.outs["out"] = D;
    } else {
        throw MalformedInput(fmt::format("box '{}': unknown op '{}'", b.id, b.op));
    }
    return sig;
}

std::vector<std::string> typecheck(const Workflow& w) {
    std::vector<std::string> errors;
    std::map<std::string, const Box*> by_id;
    std::map<std::string, PortSig> sigs;
    for (const auto& b : w.boxes) {
        if (by_id.count(b.id)) {
            errors.push_back(fmt::format("duplicate box id '{}'", b.id));
            continue;
        }
        by_id[b.id] = &b;
        try {
            sigs[b.id] = box_signature(w, b);
        } catch (const Error& e) {
            errors.push_back(e.what());
        }
    }

    std::map<std::pair<std::string, std::string>, int> in_wired;
    for (const auto& wire : w.wires) {
        auto from = sigs.find(wire.from_box);
        auto to = sigs.find(wire.to_box);
        if (from == sigs.end() || to == sigs.end()) {
            errors.push_back(fmt::format("wire references unknown box '{}' or '{}'",
                                         wire.from_box, wire.to_box));
            continue;
        }
        auto op = from->second.outs.find(wire.from_port);
        auto ip = to->second.ins.find(wire.to_port);
        if (op == from->second.outs.end()) {
            errors.push_back(
                fmt::format("no out-port '{}.{}'", wire.from_box, wire.from_port));
            continue;
        }
        if (ip == to->second.ins.end()) {
            errors.push_back(fmt::format("no in-port '{}.{}'", wire.to_box, wire.to_port));
            continue;
        }
        if (op->second != ip->second)
            errors.push_back(fmt::format(
                "type mismatch on wire {}.{} ({}) -> {}.{} ({})", wire.from_box,
                wire.from_port, port_type_name(op->second), wire.to_box, wire.to_port,
                port_type_name(ip->second)));
        in_wired[{wire.to_box, wire.to_port}]++;
    }
    for (const auto& [id, sig] : sigs)
        for (const auto& [port, type] : sig.ins) {
            int n = in_wired.count({id, port}) ? in_wired[{id, port}] : 0;
            if (n != 1)
                errors.push_back(
                    fmt::format("in-port '{}.{}' wired {} times (need exactly 1)", id, port, n));
        }

    // DAG check over the box dependency relation.
    std::map<std::string, std::set<std::string>> deps;
    for (const auto& wire : w.wires) deps[wire.to_box].insert(wire.from_box);
    std::map<std::string, int> state; // 0 new, 1 open, 2 done
    std::function<bool(const std::string&)> visit = [&](const std::string& v) {
        if (state[v] == 1) return false;
        if (state[v] == 2) return true;
        state[v] = 1;
        for (const auto& u : deps[v])
            if (!visit(u)) return false;
        state[v] = 2;
        return true;
    };
    for (const auto& b : w.boxes)
        if (!visit(b.id)) {
            errors.push_back("wiring contains a cycle");
            break;
        }

    for (const auto& out : w.outputs) {
        auto dot = out.rfind('.');
        if (dot == std::string::npos) {
            errors.push_back(fmt::format("output '{}' must be 'box.port'", out));
            continue;
        }
        std::string box = out.substr(0, dot), port = out.substr(dot + 1);
        if (!sigs.count(box) || !sigs[box].outs.count(port))
            errors.push_back(fmt::format("output references unknown port '{}'", out));
    }
    return errors;
}

// ---------------------------------------------------------------------------
// Name synthesis through colimits
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> uniquify(std::vector<std::string> names) {
    std::set<std::string> seen;
    for (auto& n : names) {
        if (n.empty()) n = "x";
        std::string cand = n;
        int k = 1;
        while (!seen.insert(cand).second) cand = fmt::format("{}#{}", n, k++);
        n = cand;
    }
    return names;
}

// Names for the nodes of a chased diagram: provenance reps that are plain
// copies of input elements keep their input names.
struct KanNamer {
    const CSetKanResult& kan;
    const std::vector<NodeMeta>& dom_meta;

    std::string element_name(int node, int schema_obj, int elem) const {
        int po = kan.cod_product.object_of({node, schema_obj});
        const Provenance& pv = kan.set_result.lan.provenance[po][elem];
        const auto& origin = kan.dom_product.object_tuple[pv.origin_node];
        // A provenance path of pure shape moves is a diagram-morphism image
        // of the origin element, so the origin's name still describes it.
        bool shape_moves_only = true;
        for (int g : pv.path)
            if (kan.cod_product.gen_origin[g].factor != 0) shape_moves_only = false;
        if (shape_moves_only && origin[1] == schema_obj) {
            const NodeMeta& m = dom_meta[origin[0]];
            if (schema_obj == PETRI_S) return m.species[pv.origin_elem];
            if (schema_obj == PETRI_T) return m.transitions[pv.origin_elem];
        }
        return fmt::format("x{}", elem);
    }
};

// Meta for a coequalizer/Lan result: names carried along provenance, identity
// observables, no stratification coordinates.
std::vector<NodeMeta> induce_meta(const CSetKanResult& kan,
                                  const std::vector<std::vector<std::vector<int>>>* gamma_class,
                                  const Diagram& apex,
                                  const std::vector<NodeMeta>& dom_meta) {
    KanNamer namer{kan, dom_meta};
    std::vector<NodeMeta> out;
    for (size_t node = 0; node < apex.ob.size(); ++node) {
        NodeMeta m;
        for (int kind : {PETRI_S, PETRI_T}) {
            std::vector<std::string> names(apex.ob[node].parts[kind]);
            if (gamma_class) {
                // Representative = first Lan element of each quotient class.
                const auto& cls = (*gamma_class)[node][kind];
                std::vector<int> rep(names.size(), -1);
                for (int e = static_cast<int>(cls.size()) - 1; e >= 0; --e) rep[cls[e]] = e;
                for (size_t k = 0; k < names.size(); ++k)
                    names[k] = namer.element_name(static_cast<int>(node), kind, rep[k]);
            } else {
                for (size_t k = 0; k < names.size(); ++k)
                    names[k] = namer.element_name(static_cast<int>(node), kind,
                                                  static_cast<int>(k));
            }
            if (kind == PETRI_S)
                m.species = uniquify(std::move(names));
            else
                m.transitions = uniquify(std::move(names));
        }
        m.obs = identity_observable(petri_from_cset(apex.ob[node], m.species, m.transitions));
        out.push_back(std::move(m));
    }
    return out;
}

ModelSpace rename_nodes(ModelSpace ms, const json& config) {
    if (!config.contains("rename")) return ms;
    FinCatPresentation shape = *ms.space.diagram.shape;
    for (const auto& [from, to] : config["rename"].items()) {
        int i = shape.object_index(from);
        if (i < 0) throw MalformedInput(fmt::format("rename: unknown node '{}'", from));
        shape.objects[i] = to.get<std::string>();
    }
    ms.space.diagram.shape = make_fincat(std::move(shape));
    return ms;
}

bool spaces_equal(const ModelSpace& a, const ModelSpace& b) {
    if (!diagrams_equal(a.space.diagram, b.space.diagram)) return false;
    if (!(a.space.base == b.space.base)) return false;
    for (size_t i = 0; i < a.space.typing.size(); ++i)
        if (!(a.space.typing[i].components == b.space.typing[i].components)) return false;
    return true;
}

struct Executor {
    const Workflow& w;
    const std::map<std::string, Artifact>& inputs;
    std::map<std::string, Artifact> values; // "box.port"
    WorkflowResult result;

    int budget_of(const Box& b) const { return b.config.value("budget", 1000); }

    const Artifact& in(const Box& b, const std::string& port) const {
        for (const auto& wire : w.wires)
            if (wire.to_box == b.id && wire.to_port == port) {
                auto it = values.find(wire.from_box + "." + wire.from_port);
                if (it == values.end())
                    throw InternalError("executor: dependency not yet computed");
                return it->second;
            }
        throw RuntimeBoxError(b.id, fmt::format("in-port '{}' is not wired", port));
    }

    Artifact run_load(const Box& b) {
        std::string name = b.config.value("input", "");
        auto it = inputs.find(name);
        if (it == inputs.end())
            throw RuntimeBoxError(b.id, fmt::format("missing input artifact '{}'", name));
        return it->second;
    }

    Artifact run_glue(const Box& b) {
        const Artifact& base = in(b, "base");
        const Artifact& span = in(b, "span");
        const ModelSpace& S = *base.space;
        const TypedSpan& T = *span.span;
        if (!diagrams_equal(T.left.dom, T.right.dom))
            throw RuntimeBoxError(b.id, "span legs do not share a common apex diagram");
        if (!spaces_equal(T.left_cod, S))
            throw RuntimeBoxError(b.id, "span left leg does not target the wired base space");
        TypedPushout po;
        try {
            po = typed_pushout(TypedDiagram{T.left.dom, S.space.base, T.apex.typing}, S.space,
                               T.right_cod.space, T.left, T.right, budget_of(b));
        } catch (const Error& e) {
            throw RuntimeBoxError(b.id, e.what());
        }
        std::vector<NodeMeta> cod_meta = S.meta;
        cod_meta.insert(cod_meta.end(), T.right_cod.meta.begin(), T.right_cod.meta.end());
        ModelSpace out;
        out.space = po.apex;
        out.meta = induce_meta(*po.underlying.coeq.lan_cod, &po.underlying.coeq.gamma_class,
                               po.apex.diagram, cod_meta);
        Artifact a;
        a.type = PortType::DiagramOverX;
        a.space = std::make_shared<ModelSpace>(rename_nodes(std::move(out), b.config));
        return a;
    }

    Artifact run_coproduct(const Box& b) {
        const ModelSpace& A = *in(b, "a").space;
        const ModelSpace& B = *in(b, "b").space;
        TypedCoproduct cp;
        try {
            cp = typed_coproduct({A.space, B.space});
        } catch (const Error& e) {
            throw RuntimeBoxError(b.id, e.what());
        }
        ModelSpace out;
        out.space = cp.apex;
        out.meta = A.meta;
        out.meta.insert(out.meta.end(), B.meta.begin(), B.meta.end());
        Artifact a;
        a.type = PortType::DiagramOverX;
        a.space = std::make_shared<ModelSpace>(rename_nodes(std::move(out), b.config));
        return a;
    }

    Artifact run_typed_product(const Box& b) {
        const ModelSpace& A = *in(b, "a").space;
        const ModelSpace& B = *in(b, "b").space;
        TypedProduct tp;
        try {
            tp = typed_product({A.space, B.space});
        } catch (const Error& e) {
            throw RuntimeBoxError(b.id, e.what());
        }
        std::string obs_factor = b.config.value("observable", "a");
        if (obs_factor != "a" && obs_factor != "b")
            throw RuntimeBoxError(b.id, "observable factor must be 'a' or 'b'");
        int of = obs_factor == "a" ? 0 : 1;
        const ModelSpace& OF = of == 0 ? A : B;

        ModelSpace out;
        out.space = tp.apex;
        for (size_t node = 0; node < tp.apex.diagram.ob.size(); ++node) {
            const auto& tuple = tp.shape_product.object_tuple[node];
            const NodeMeta& ma = A.meta[tuple[0]];
            const NodeMeta& mb = B.meta[tuple[1]];
            const LimitResult& lim = tp.node_limits[node];
            NodeMeta m;
            for (const auto& t : lim.tuples[PETRI_S]) {
                m.species.push_back(
                    fmt::format("{}_{}", ma.species[t[0]], mb.species[t[1]]));
                m.species_coords.push_back({ma.species[t[0]], mb.species[t[1]]});
            }
            for (const auto& t : lim.tuples[PETRI_T])
                m.transitions.push_back(
                    fmt::format("{}_{}", ma.transitions[t[0]], mb.transitions[t[1]]));
            m.species = uniquify(std::move(m.species));
            m.transitions = uniquify(std::move(m.transitions));
            const NodeMeta& fm = of == 0 ? ma : mb;
            m.obs.morphism = compose(tp.projections[of].phi[node], fm.obs.morphism);
            m.obs.cod_species = fm.obs.cod_species;
            out.meta.push_back(std::move(m));
        }
        (void)OF;
        Artifact a;
        a.type = PortType::DiagramOverX;
        a.space = std::make_shared<ModelSpace>(rename_nodes(std::move(out), b.config));
        return a;
    }

    Artifact run_coequalizer(const Box& b) {
        const MorphismArtifact& m1 = *in(b, "a").morphism;
        const MorphismArtifact& m2 = *in(b, "b").morphism;
        if (!diagrams_equal(m1.m.dom, m2.m.dom))
            throw RuntimeBoxError(b.id, "coequalizer legs do not share their domain");
        if (!diagrams_equal(m1.m.cod, m2.m.cod) || !spaces_equal(m1.cod_space, m2.cod_space))
            throw RuntimeBoxError(b.id, "coequalizer legs do not share their codomain");
        DiagramCoequalizer ce;
        std::vector<CSetMorphism> typing;
        try {
            ce = coequalizer({m1.m, m2.m}, budget_of(b));
            typing = induce_coequalizer_typing(ce, m1.cod_space.space.base,
                                               m1.cod_space.space.typing);
        } catch (const Error& e) {
            throw RuntimeBoxError(b.id, e.what());
        }
        ModelSpace out;
        out.space = TypedDiagram{ce.apex, m1.cod_space.space.base, typing};
        out.meta = induce_meta(*ce.lan_cod, &ce.gamma_class, ce.apex, m1.cod_space.meta);
        Artifact a;
        a.type = PortType::DiagramOverX;
        a.space = std::make_shared<ModelSpace>(rename_nodes(std::move(out), b.config));
        return a;
    }

    Artifact run_leftkan(const Box& b) {
        const ModelSpace& A = *in(b, "a").space;
        if (!b.config.contains("functor"))
            throw RuntimeBoxError(b.id, "leftkan box needs a 'functor' config");
        CSetKanResult kan;
        std::vector<CSetMorphism> typing;
        try {
            FinCatPtr cod = make_fincat(fincat_from_json(b.config["functor"].at("cod")));
            FinFunctor F =
                functor_from_json(b.config["functor"], A.space.diagram.shape, cod);
            kan = leftkan_cset(A.space.diagram, F, budget_of(b));
            DiagramMorphism t = transpose(kan, constant_diagram(cod, A.space.base),
                                          A.space.typing);
            typing = t.phi;
        } catch (const Error& e) {
            throw RuntimeBoxError(b.id, e.what());
        }
        ModelSpace out;
        out.space = TypedDiagram{kan.lan, A.space.base, typing};
        out.meta = induce_meta(kan, nullptr, kan.lan, A.meta);
        Artifact a;
        a.type = PortType::DiagramOverX;
        a.space = std::make_shared<ModelSpace>(rename_nodes(std::move(out), b.config));
        return a;
    }

    void run() {
        // Topological ranks; ties broken by box id.
        std::map<std::string, int> rank;
        std::map<std::string, std::set<std::string>> deps;
        for (const auto& wire : w.wires) deps[wire.to_box].insert(wire.from_box);
        std::function<int(const std::string&)> compute = [&](const std::string& v) -> int {
            auto it = rank.find(v);
            if (it != rank.end()) return it->second;
            int r = 0;
            for (const auto& u : deps[v]) r = std::max(r, compute(u) + 1);
            rank[v] = r;
            return r;
        };
        std::vector<const Box*> order;
        for (const auto& b : w.boxes) {
            compute(b.id);
            order.push_back(&b);
        }
        std::stable_sort(order.begin(), order.end(), [&](const Box* a, const Box* b) {
            if (rank[a->id] != rank[b->id]) return rank[a->id] < rank[b->id];
            return a->id < b->id;
        });

        for (const Box* b : order) {
            Artifact a;
            if (b->op == "load")
                a = run_load(*b);
            else if (b->op == "glue")
                a = run_glue(*b);
            else if (b->op == "coproduct")
                a = run_coproduct(*b);
            else if (b->op == "typed_product" || b->op == "limit")
                a = run_typed_product(*b);
            else if (b->op == "coequalizer")
                a = run_coequalizer(*b);
            else if (b->op == "leftkan")
                a = run_leftkan(*b);
            else
                throw RuntimeBoxError(b->id, "unknown op " + b->op);
            std::string summary = a.type == PortType::DiagramOverX
                                      ? fmt::format("space with {} nodes",
                                                    a.space->space.diagram.ob.size())
                                      : port_type_name(a.type);
            result.log.push_back(fmt::format("[{}] {} ({}): {}", rank[b->id], b->id, b->op,
                                             summary));
            values[b->id + ".out"] = std::move(a);
        }
        for (const auto& out : w.outputs) {
            auto it = values.find(out);
            if (it == values.end())
                throw MalformedInput(fmt::format("workflow output '{}' was not produced", out));
            result.outputs[out] = it->second;
        }
    }
};

} // namespace

WorkflowResult execute(const Workflow& w, const std::map<std::string, Artifact>& inputs) {
    auto errors = typecheck(w);
    if (!errors.empty())
        throw MalformedInput("workflow does not typecheck: " + errors.front());
    Executor ex{w, inputs, {}, {}};
    ex.run();
    // Output spaces must satisfy their invariants.
    for (auto& [name, a] : ex.result.outputs)
        if (a.type == PortType::DiagramOverX) validate_model_space(*a.space);
    return ex.result;
}

} // namespace modelspace

#include "modelspace/leftkan.hpp"

#include <algorithm>
#include <deque>

#include <fmt/format.h>

namespace modelspace {

std::vector<std::string> validate_set_diagram(const SetDiagram& x) {
    std::vector<std::string> out;
    const FinCatPresentation& s = *x.shape;
    if (x.sets.size() != s.objects.size() || x.maps.size() != s.generators.size()) {
        out.push_back("set/map table count does not match the shape");
        return out;
    }
    for (size_t g = 0; g < s.generators.size(); ++g) {
        const Generator& gen = s.generators[g];
        if (static_cast<int>(x.maps[g].size()) != x.sets[gen.src]) {
            out.push_back(fmt::format("map '{}' has wrong length", gen.name));
            continue;
        }
        for (int v : x.maps[g])
            if (v < 0 || v >= x.sets[gen.tgt])
                out.push_back(fmt::format("map '{}' out of range", gen.name));
    }
    if (!out.empty()) return out;
    for (size_t q = 0; q < s.equations.size(); ++q) {
        const auto& [lhs, rhs] = s.equations[q];
        int src = path_src(s, lhs);
        for (int e = 0; e < x.sets[src]; ++e)
            if (apply_set_path(x, lhs, e) != apply_set_path(x, rhs, e))
                out.push_back(fmt::format("equation {} fails at element {}", q, e));
    }
    return out;
}

int apply_set_path(const SetDiagram& x, const Path& p, int elem) {
    int e = elem;
    for (int g : p.gens) e = x.maps[g][e];
    return e;
}

// ---------------------------------------------------------------------------
// Chase
// ---------------------------------------------------------------------------

namespace {

// Mutable chase state over the codomain shape I. Elements carry per-object
// ids; merges stay within one object, so each object has its own union-find.
struct Chase {
    const FinCatPresentation& I;
    std::vector<std::vector<int>> parent;          // per object: union-find
    std::vector<std::vector<Provenance>> prov;     // per object, per raw id
    std::vector<std::vector<int>> maps;            // per I-generator: raw id -> raw id or -1
    std::vector<std::vector<int>> gens_out;        // per object: outgoing generators
    bool merged_any = false;

    explicit Chase(const FinCatPresentation& shape) : I(shape) {
        parent.resize(I.objects.size());
        prov.resize(I.objects.size());
        maps.resize(I.generators.size());
        gens_out.resize(I.objects.size());
        for (size_t g = 0; g < I.generators.size(); ++g)
            gens_out[I.generators[g].src].push_back(static_cast<int>(g));
    }

    int find(int obj, int a) {
        auto& p = parent[obj];
        while (p[a] != a) {
            p[a] = p[p[a]];
            a = p[a];
        }
        return a;
    }

    int fresh(int obj, Provenance pv) {
        int id = static_cast<int>(parent[obj].size());
        parent[obj].push_back(id);
        prov[obj].push_back(std::move(pv));
        for (int g : gens_out[obj]) maps[g].push_back(-1);
        return id;
    }

    int lookup(int gen, int a) { // a is any raw id at src(gen)
        return maps[gen][find(I.generators[gen].src, a)];
    }

    // -1 when some step is still undefined.
    int walk(const Path& p, int a) {
        int e = a;
        for (int g : p.gens) {
            e = lookup(g, e);
            if (e < 0) return -1;
        }
        return e;
    }

    void merge(int obj, int a, int b) {
        std::deque<std::tuple<int, int, int>> work{{obj, a, b}};
        while (!work.empty()) {
            auto [c, x, y] = work.front();
            work.pop_front();
            int rx = find(c, x), ry = find(c, y);
            if (rx == ry) continue;
            if (rx > ry) std::swap(rx, ry);
            parent[c][ry] = rx; // least id is the representative
            merged_any = true;
            for (int g : gens_out[c]) {
                int mx = maps[g][rx], my = maps[g][ry];
                if (mx < 0)
                    maps[g][rx] = my;
                else if (my >= 0)
                    work.emplace_back(I.generators[g].tgt, mx, my);
            }
        }
    }
};

} // namespace

KanResult chase_set(const SetDiagram& x, const FinFunctor& f, int budget) {
    check_functor_structure(f);
    if (!(*f.dom == *x.shape)) throw MalformedInput("chase_set: functor domain mismatch");
    {
        auto errs = validate_set_diagram(x);
        if (!errs.empty()) throw MalformedInput("chase_set: invalid input diagram: " + errs[0]);
    }
    const FinCatPresentation& J = *x.shape;
    const FinCatPresentation& I = *f.cod;
    Chase st(I);

    // Seed with a copy of every input element at its image object.
    std::vector<std::vector<int>> unit(J.objects.size());
    for (size_t j = 0; j < J.objects.size(); ++j) {
        int i = f.object_map[j];
        for (int e = 0; e < x.sets[j]; ++e)
            unit[j].push_back(st.fresh(i, Provenance{static_cast<int>(j), e, {}}));
    }

    bool saturated = false;
    for (int round = 0; round < budget && !saturated; ++round) {
        bool created = false;
        st.merged_any = false;

        // (a) Action completion: define every generator on every current root.
        for (size_t obj = 0; obj < I.objects.size(); ++obj) {
            size_t count = st.parent[obj].size(); // elements created below wait a round
            for (size_t a = 0; a < count; ++a) {
                if (st.find(static_cast<int>(obj), static_cast<int>(a)) != static_cast<int>(a))
                    continue;
                for (int g : st.gens_out[obj]) {
                    if (st.maps[g][a] >= 0) continue;
                    Provenance pv = st.prov[obj][a];
                    pv.path.push_back(g);
                    int id = st.fresh(I.generators[g].tgt, std::move(pv));
                    st.maps[g][a] = id;
                    created = true;
                }
            }
        }

        // (b) Equation enforcement: shape equations ...
        for (const auto& [lhs, rhs] : I.equations) {
            int src = path_src(I, lhs);
            for (size_t a = 0; a < st.parent[src].size(); ++a) {
                if (st.find(src, static_cast<int>(a)) != static_cast<int>(a)) continue;
                int va = st.walk(lhs, static_cast<int>(a));
                int vb = st.walk(rhs, static_cast<int>(a));
                if (va >= 0 && vb >= 0) st.merge(path_tgt(I, lhs), va, vb);
            }
        }
        // ... and naturality of the unit along dom generators.
        for (size_t g = 0; g < J.generators.size(); ++g) {
            const Generator& gen = J.generators[g];
            const Path& img = f.generator_map[g];
            int tgt_obj = f.object_map[gen.tgt];
            for (int e = 0; e < x.sets[gen.src]; ++e) {
                int direct = unit[gen.tgt][x.maps[g][e]];
                int routed = st.walk(img, unit[gen.src][e]);
                if (routed >= 0) st.merge(tgt_obj, direct, routed);
            }
        }

        saturated = !created && !st.merged_any;
    }
    if (!saturated)
        throw ChaseBudgetExceeded(
            fmt::format("chase did not saturate within {} rounds", budget));

    // Compact classes to dense ids in representative order.
    KanResult res;
    res.lan.shape = f.cod;
    res.lan.sets.assign(I.objects.size(), 0);
    res.lan.maps.resize(I.generators.size());
    res.lan.provenance.resize(I.objects.size());
    std::vector<std::vector<int>> dense(I.objects.size());
    for (size_t obj = 0; obj < I.objects.size(); ++obj) {
        dense[obj].assign(st.parent[obj].size(), -1);
        for (size_t a = 0; a < st.parent[obj].size(); ++a) {
            if (st.find(static_cast<int>(obj), static_cast<int>(a)) != static_cast<int>(a))
                continue;
            dense[obj][a] = res.lan.sets[obj]++;
            res.lan.provenance[obj].push_back(st.prov[obj][a]);
        }
        for (size_t a = 0; a < st.parent[obj].size(); ++a)
            dense[obj][a] = dense[obj][st.find(static_cast<int>(obj), static_cast<int>(a))];
    }
    for (size_t g = 0; g < I.generators.size(); ++g) {
        const Generator& gen = I.generators[g];
        res.lan.maps[g].assign(res.lan.sets[gen.src], -1);
        for (size_t a = 0; a < st.parent[gen.src].size(); ++a) {
            int v = st.maps[g][a];
            if (v < 0) continue;
            res.lan.maps[g][dense[gen.src][a]] = dense[gen.tgt][v];
        }
        for (int v : res.lan.maps[g])
            if (v < 0) throw InternalError("chase: saturated result has undefined action");
    }
    res.unit.resize(J.objects.size());
    for (size_t j = 0; j < J.objects.size(); ++j) {
        int i = f.object_map[j];
        for (int raw : unit[j]) res.unit[j].push_back(dense[i][raw]);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Transpose through provenance
// ---------------------------------------------------------------------------

std::vector<std::vector<int>> transpose_set(const KanResult& kan, const SetDiagram& x,
                                            const FinFunctor& f, const SetDiagram& target,
                                            const std::vector<std::vector<int>>& cocone) {
    const FinCatPresentation& J = *x.shape;
    const FinCatPresentation& I = *kan.lan.shape;
    if (!(*target.shape == I)) throw MalformedInput("transpose: target shape mismatch");
    if (cocone.size() != J.objects.size()) throw MalformedInput("transpose: cocone arity");

    for (size_t j = 0; j < J.objects.size(); ++j) {
        if (cocone[j].size() != static_cast<size_t>(x.sets[j]))
            throw MalformedInput("transpose: cocone component size mismatch");
        for (int v : cocone[j])
            if (v < 0 || v >= target.sets[f.object_map[j]])
                throw MalformedInput("transpose: cocone value out of range");
    }
    // Cocone naturality over dom generators.
    for (size_t g = 0; g < J.generators.size(); ++g) {
        const Generator& gen = J.generators[g];
        for (int e = 0; e < x.sets[gen.src]; ++e) {
            int via_target = apply_set_path(target, f.generator_map[g], cocone[gen.src][e]);
            if (via_target != cocone[gen.tgt][x.maps[g][e]])
                throw IllFormedCocone(fmt::format(
                    "cocone is not natural along generator '{}'", gen.name));
        }
    }

    std::vector<std::vector<int>> t(I.objects.size());
    for (size_t i = 0; i < I.objects.size(); ++i) {
        for (int k = 0; k < kan.lan.sets[i]; ++k) {
            const Provenance& pv = kan.lan.provenance[i][k];
            int v = cocone[pv.origin_node][pv.origin_elem];
            for (int g : pv.path) v = target.maps[g][v];
            t[i].push_back(v);
        }
    }
    // Well-definedness across merged classes shows up as a naturality or
    // unit-factorization failure of the candidate.
    for (size_t g = 0; g < I.generators.size(); ++g) {
        const Generator& gen = I.generators[g];
        for (int k = 0; k < kan.lan.sets[gen.src]; ++k)
            if (t[gen.tgt][kan.lan.maps[g][k]] != target.maps[g][t[gen.src][k]])
                throw IllFormedCocone("transpose is not natural; cocone ill-formed");
    }
    for (size_t j = 0; j < J.objects.size(); ++j)
        for (int e = 0; e < x.sets[j]; ++e)
            if (t[f.object_map[j]][kan.unit[j][e]] != cocone[j][e])
                throw IllFormedCocone("transpose does not factor the cocone through the unit");
    return t;
}

// ---------------------------------------------------------------------------
// Tensor-hom
// ---------------------------------------------------------------------------

TensorHom tensor_hom(const Diagram& d) {
    check_functorial(d);
    if (d.ob.empty()) throw MalformedInput("tensor_hom of an empty diagram");
    const FinCatPtr schema = d.ob[0].schema;
    TensorHom th;
    th.shape_product = product({d.shape, schema});
    const FinCatProduct& p = th.shape_product;
    th.set_diagram.shape = p.apex;
    for (const auto& t : p.object_tuple)
        th.set_diagram.sets.push_back(d.ob[t[0]].parts[t[1]]);
    for (const auto& origin : p.gen_origin) {
        if (origin.factor == 0) {
            // Shape move at a fixed schema object: the phi component.
            th.set_diagram.maps.push_back(d.hom[origin.gen].components[origin.objects[1]]);
        } else {
            // Schema action inside a fixed node.
            th.set_diagram.maps.push_back(d.ob[origin.objects[0]].actions[origin.gen]);
        }
    }
    return th;
}

Diagram tensor_hom_inverse(const SetDiagram& sd, const FinCatProduct& prod,
                           const FinCatPtr& shape, const FinCatPtr& schema) {
    Diagram d;
    d.shape = shape;
    size_t nschema = schema->objects.size();
    for (size_t i = 0; i < shape->objects.size(); ++i) {
        CSet x;
        x.schema = schema;
        for (size_t c = 0; c < nschema; ++c)
            x.parts.push_back(sd.sets[prod.object_of({static_cast<int>(i), static_cast<int>(c)})]);
        for (size_t g = 0; g < schema->generators.size(); ++g) {
            int src_c = schema->generators[g].src;
            int pg = prod.generator_of(1, static_cast<int>(g),
                                       {static_cast<int>(i), src_c});
            if (pg < 0) throw InternalError("tensor_hom_inverse: missing schema generator");
            x.actions.push_back(sd.maps[pg]);
        }
        d.ob.push_back(std::move(x));
    }
    for (size_t f = 0; f < shape->generators.size(); ++f) {
        const Generator& gen = shape->generators[f];
        CSetMorphism m;
        m.dom = d.ob[gen.src];
        m.cod = d.ob[gen.tgt];
        for (size_t c = 0; c < nschema; ++c) {
            int pg = prod.generator_of(0, static_cast<int>(f),
                                       {gen.src, static_cast<int>(c)});
            if (pg < 0) throw InternalError("tensor_hom_inverse: missing shape generator");
            m.components.push_back(sd.maps[pg]);
        }
        d.hom.push_back(std::move(m));
    }
    return d;
}

// ---------------------------------------------------------------------------
// Left Kan extension in C-Set
// ---------------------------------------------------------------------------

CSetKanResult leftkan_cset(const Diagram& d, const FinFunctor& f, int budget) {
    if (!(*f.dom == *d.shape)) throw MalformedInput("leftkan_cset: functor domain mismatch");
    CSetKanResult res;
    const FinCatPtr schema = d.ob.empty() ? nullptr : d.ob[0].schema;
    if (!schema) throw MalformedInput("leftkan_cset: empty diagram");

    TensorHom th = tensor_hom(d);
    res.dom_product = th.shape_product;
    res.cod_product = product({f.cod, schema});
    res.x_prime = th.set_diagram;
    res.f_prime = product_functor({f, identity_functor(schema)}, res.dom_product,
                                  res.cod_product);
    res.set_result = chase_set(res.x_prime, res.f_prime, budget);
    res.lan = tensor_hom_inverse(res.set_result.lan, res.cod_product, f.cod, schema);

    res.unit.dom = d;
    res.unit.cod = res.lan;
    res.unit.shape_map = f;
    size_t nschema = schema->objects.size();
    for (size_t j = 0; j < d.shape->objects.size(); ++j) {
        CSetMorphism phi;
        phi.dom = d.ob[j];
        phi.cod = res.lan.ob[f.object_map[j]];
        for (size_t c = 0; c < nschema; ++c) {
            int po = res.dom_product.object_of({static_cast<int>(j), static_cast<int>(c)});
            phi.components.push_back(res.set_result.unit[po]);
        }
        res.unit.phi.push_back(std::move(phi));
    }
    return res;
}

DiagramMorphism transpose(const CSetKanResult& kan, const Diagram& target,
                          const std::vector<CSetMorphism>& cocone) {
    check_functorial(target);
    const FinCatPtr schema = target.ob.empty() ? nullptr : target.ob[0].schema;
    if (!schema) throw MalformedInput("transpose: empty target");
    if (!(*target.shape == *kan.lan.shape)) throw MalformedInput("transpose: shape mismatch");

    TensorHom tt = tensor_hom(target);
    if (!(*tt.shape_product.apex == *kan.cod_product.apex))
        throw InternalError("transpose: tensor-hom shapes disagree");

    size_t nschema = schema->objects.size();
    std::vector<std::vector<int>> flat_cocone(kan.dom_product.object_tuple.size());
    for (size_t po = 0; po < kan.dom_product.object_tuple.size(); ++po) {
        const auto& t = kan.dom_product.object_tuple[po];
        flat_cocone[po] = cocone.at(t[0]).components.at(t[1]);
    }
    auto t = transpose_set(kan.set_result, kan.x_prime, kan.f_prime, tt.set_diagram,
                           flat_cocone);

    DiagramMorphism m;
    m.dom = kan.lan;
    m.cod = target;
    m.shape_map = identity_functor(kan.lan.shape);
    for (size_t i = 0; i < kan.lan.shape->objects.size(); ++i) {
        CSetMorphism phi;
        phi.dom = kan.lan.ob[i];
        phi.cod = target.ob[i];
        for (size_t c = 0; c < nschema; ++c) {
            int po = kan.cod_product.object_of({static_cast<int>(i), static_cast<int>(c)});
            phi.components.push_back(t[po]);
        }
        m.phi.push_back(std::move(phi));
    }
    return m;
}

} // namespace modelspace

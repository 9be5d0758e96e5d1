#include "modelspace/cset.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include <fmt/format.h>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace modelspace {

CSet empty_cset(const FinCatPtr& schema) {
    CSet x;
    x.schema = schema;
    x.parts.assign(schema->objects.size(), 0);
    x.actions.assign(schema->generators.size(), {});
    return x;
}

int apply_path(const CSet& x, const Path& p, int elem) {
    int e = elem;
    for (int g : p.gens) e = x.actions[g][e];
    return e;
}

std::vector<std::string> validate(const CSet& x) {
    std::vector<std::string> out;
    const FinCatPresentation& s = *x.schema;
    if (x.parts.size() != s.objects.size() || x.actions.size() != s.generators.size()) {
        out.push_back("part/action table count does not match the schema");
        return out;
    }
    for (size_t g = 0; g < s.generators.size(); ++g) {
        const Generator& gen = s.generators[g];
        if (static_cast<int>(x.actions[g].size()) != x.parts[gen.src]) {
            out.push_back(fmt::format("action '{}' has wrong length", gen.name));
            continue;
        }
        for (int e = 0; e < x.parts[gen.src]; ++e) {
            int v = x.actions[g][e];
            if (v < 0 || v >= x.parts[gen.tgt])
                out.push_back(fmt::format("action '{}' out of range at element {}", gen.name, e));
        }
    }
    if (!out.empty()) return out;
    for (size_t q = 0; q < s.equations.size(); ++q) {
        const auto& [lhs, rhs] = s.equations[q];
        int src = path_src(s, lhs);
        for (int e = 0; e < x.parts[src]; ++e) {
            if (apply_path(x, lhs, e) != apply_path(x, rhs, e))
                out.push_back(fmt::format("equation {} fails at element {}", q, e));
        }
    }
    return out;
}

CSetMorphism identity_morphism(const CSet& x) {
    CSetMorphism f;
    f.dom = f.cod = x;
    f.components.resize(x.parts.size());
    for (size_t c = 0; c < x.parts.size(); ++c) {
        f.components[c].resize(x.parts[c]);
        for (int e = 0; e < x.parts[c]; ++e) f.components[c][e] = e;
    }
    return f;
}

CSetMorphism compose(const CSetMorphism& f, const CSetMorphism& g) {
    if (!(f.cod == g.dom)) throw MalformedInput("compose: morphism endpoints do not match");
    CSetMorphism h;
    h.dom = f.dom;
    h.cod = g.cod;
    h.components.resize(f.components.size());
    for (size_t c = 0; c < f.components.size(); ++c)
        for (int v : f.components[c]) h.components[c].push_back(g.components[c][v]);
    return h;
}

bool is_natural(const CSetMorphism& f) {
    const FinCatPresentation& s = *f.dom.schema;
    if (!(*f.dom.schema == *f.cod.schema)) throw MalformedInput("is_natural: schema mismatch");
    for (size_t c = 0; c < s.objects.size(); ++c) {
        if (static_cast<int>(f.components[c].size()) != f.dom.parts[c]) return false;
        for (int v : f.components[c])
            if (v < 0 || v >= f.cod.parts[c]) return false;
    }
    for (size_t g = 0; g < s.generators.size(); ++g) {
        const Generator& gen = s.generators[g];
        for (int e = 0; e < f.dom.parts[gen.src]; ++e) {
            if (f.components[gen.tgt][f.dom.actions[g][e]] !=
                f.cod.actions[g][f.components[gen.src][e]])
                return false;
        }
    }
    return true;
}

bool is_mono(const CSetMorphism& f) {
    if (!is_natural(f)) return false;
    for (size_t c = 0; c < f.components.size(); ++c) {
        std::vector<char> hit(f.cod.parts[c], 0);
        for (int v : f.components[c]) {
            if (hit[v]) return false;
            hit[v] = 1;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Homomorphism search
// ---------------------------------------------------------------------------

namespace {

struct HomSearcher {
    const CSet& x;
    const CSet& y;
    bool monic;
    size_t limit; // 0 = unlimited
    std::vector<std::vector<int>> comp;
    std::vector<std::vector<char>> used;
    std::vector<std::pair<int, int>> trail;
    std::vector<std::vector<int>> gens_out; // per object: outgoing generators
    std::vector<CSetMorphism> found;

    HomSearcher(const CSet& x_, const CSet& y_, bool monic_, size_t limit_)
        : x(x_), y(y_), monic(monic_), limit(limit_) {
        size_t nobj = x.schema->objects.size();
        comp.resize(nobj);
        used.resize(nobj);
        gens_out.resize(nobj);
        for (size_t c = 0; c < nobj; ++c) {
            comp[c].assign(x.parts[c], -1);
            used[c].assign(y.parts[c], 0);
        }
        for (size_t g = 0; g < x.schema->generators.size(); ++g)
            gens_out[x.schema->generators[g].src].push_back(static_cast<int>(g));
    }

    // Assign comp[c][e] = v and propagate along outgoing actions. Complete
    // propagation makes naturality checks on incoming actions unnecessary:
    // a preimage can only be assigned after its image was forced.
    bool assign(int c, int e, int v) {
        if (comp[c][e] == v) return true;
        if (comp[c][e] != -1) return false;
        if (monic) {
            if (used[c][v]) return false;
            used[c][v] = 1;
        }
        comp[c][e] = v;
        trail.emplace_back(c, e);
        for (int g : gens_out[c]) {
            int e2 = x.actions[g][e];
            int v2 = y.actions[g][v];
            if (!assign(x.schema->generators[g].tgt, e2, v2)) return false;
        }
        return true;
    }

    void undo(size_t mark) {
        while (trail.size() > mark) {
            auto [c, e] = trail.back();
            trail.pop_back();
            if (monic) used[c][comp[c][e]] = 0;
            comp[c][e] = -1;
        }
    }

    bool next_free(int& c, int& e) const {
        for (c = 0; c < static_cast<int>(comp.size()); ++c)
            for (e = 0; e < static_cast<int>(comp[c].size()); ++e)
                if (comp[c][e] == -1) return true;
        return false;
    }

    // Returns true when the limit was hit and the search should stop.
    bool run() {
        int c, e;
        if (!next_free(c, e)) {
            found.push_back(CSetMorphism{x, y, comp});
            return limit && found.size() >= limit;
        }
        for (int v = 0; v < y.parts[c]; ++v) {
            size_t mark = trail.size();
            if (assign(c, e, v) && run()) return true;
            undo(mark);
        }
        return false;
    }
};

} // namespace

std::vector<CSetMorphism> hom_search(const CSet& x, const CSet& y, bool monic, int limit,
                                     bool parallel) {
    if (!(*x.schema == *y.schema)) throw MalformedInput("hom_search: schema mismatch");
    size_t lim = limit > 0 ? static_cast<size_t>(limit) : 0;
    HomSearcher root(x, y, monic, lim);
    int c0, e0;
    if (!root.next_free(c0, e0) || !parallel) {
        root.run();
        return std::move(root.found);
    }

    // Branch on the first element's candidate values; each branch is an
    // independent serial search, reassembled in candidate order.
    int branches = y.parts[c0];
    std::vector<std::vector<CSetMorphism>> buckets(branches);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int v = 0; v < branches; ++v) {
        HomSearcher s(x, y, monic, lim);
        if (s.assign(c0, e0, v)) s.run();
        buckets[v] = std::move(s.found);
    }
    std::vector<CSetMorphism> out;
    for (auto& b : buckets)
        for (auto& m : b) {
            if (lim && out.size() >= lim) return out;
            out.push_back(std::move(m));
        }
    return out;
}

// ---------------------------------------------------------------------------
// Diagram data plumbing
// ---------------------------------------------------------------------------

CSetMorphism compose_along(const CSetDiagramData& d, const Path& p, int src_node) {
    CSetMorphism m = identity_morphism(d.ob[p.empty() ? p.at : src_node]);
    for (int g : p.gens) m = compose(m, d.hom[g]);
    return m;
}

void check_functorial(const CSetDiagramData& d) {
    const FinCatPresentation& s = *d.shape;
    if (d.ob.size() != s.objects.size() || d.hom.size() != s.generators.size())
        throw MalformedInput("diagram tables do not match the shape");
    for (size_t i = 1; i < d.ob.size(); ++i)
        if (!(*d.ob[i].schema == *d.ob[0].schema))
            throw MalformedInput("diagram objects live on different schemas");
    for (size_t g = 0; g < s.generators.size(); ++g) {
        const Generator& gen = s.generators[g];
        if (!(d.hom[g].dom == d.ob[gen.src]) || !(d.hom[g].cod == d.ob[gen.tgt]))
            throw MalformedInput(
                fmt::format("diagram morphism '{}' has wrong endpoints", gen.name));
        if (!is_natural(d.hom[g]))
            throw MalformedInput(fmt::format("diagram morphism '{}' is not natural", gen.name));
    }
    for (size_t q = 0; q < s.equations.size(); ++q) {
        const auto& [lhs, rhs] = s.equations[q];
        int src = path_src(s, lhs);
        if (!(compose_along(d, lhs, src).components == compose_along(d, rhs, src).components))
            throw MalformedInput(fmt::format("diagram violates shape equation {}", q));
    }
}

namespace {

void for_each_tuple(const std::vector<int>& sizes,
                    const std::function<void(const std::vector<int>&)>& fn) {
    for (int s : sizes)
        if (s == 0) return;
    std::vector<int> t(sizes.size(), 0);
    while (true) {
        fn(t);
        int i = static_cast<int>(t.size()) - 1;
        while (i >= 0 && ++t[i] == sizes[i]) t[i--] = 0;
        if (i < 0) break;
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Limits
// ---------------------------------------------------------------------------

LimitResult limit(const CSetDiagramData& d) {
    check_functorial(d);
    const FinCatPresentation& shape = *d.shape;
    const FinCatPtr schema = d.ob.empty() ? nullptr : d.ob[0].schema;
    if (!schema) throw MalformedInput("limit over an empty diagram needs a schema");
    size_t nschema = schema->objects.size();

    LimitResult res;
    res.apex.schema = schema;
    res.apex.parts.assign(nschema, 0);
    res.apex.actions.resize(schema->generators.size());
    res.tuples.resize(nschema);

    std::vector<std::map<std::vector<int>, int>> index(nschema);
    for (size_t c = 0; c < nschema; ++c) {
        std::vector<int> sizes;
        for (const auto& ob : d.ob) sizes.push_back(ob.parts[c]);
        for_each_tuple(sizes, [&](const std::vector<int>& t) {
            for (size_t g = 0; g < shape.generators.size(); ++g) {
                const Generator& gen = shape.generators[g];
                if (d.hom[g].components[c][t[gen.src]] != t[gen.tgt]) return;
            }
            index[c][t] = static_cast<int>(res.tuples[c].size());
            res.tuples[c].push_back(t);
        });
        res.apex.parts[c] = static_cast<int>(res.tuples[c].size());
    }

    for (size_t g = 0; g < schema->generators.size(); ++g) {
        const Generator& gen = schema->generators[g];
        for (const auto& t : res.tuples[gen.src]) {
            std::vector<int> img(t.size());
            for (size_t j = 0; j < t.size(); ++j) img[j] = d.ob[j].actions[g][t[j]];
            auto it = index[gen.tgt].find(img);
            if (it == index[gen.tgt].end())
                throw InternalError("limit: induced action left the apex");
            res.apex.actions[g].push_back(it->second);
        }
    }

    for (size_t j = 0; j < d.ob.size(); ++j) {
        CSetMorphism leg;
        leg.dom = res.apex;
        leg.cod = d.ob[j];
        leg.components.resize(nschema);
        for (size_t c = 0; c < nschema; ++c)
            for (const auto& t : res.tuples[c]) leg.components[c].push_back(t[j]);
        res.legs.push_back(std::move(leg));
    }
    return res;
}

LimitResult product(const std::vector<CSet>& xs) {
    if (xs.empty()) throw MalformedInput("product of zero C-sets");
    CSetDiagramData d{discrete_shape(static_cast<int>(xs.size())), xs, {}};
    return limit(d);
}

LimitResult cset_equalizer(const std::vector<CSetMorphism>& fs) {
    if (fs.empty()) throw MalformedInput("equalizer of an empty family");
    CSetDiagramData d{parallel_shape(static_cast<int>(fs.size())), {fs[0].dom, fs[0].cod}, fs};
    return limit(d);
}

LimitResult pullback(const std::vector<CSetMorphism>& legs) {
    if (legs.empty()) throw MalformedInput("pullback of an empty cospan");
    CSetDiagramData d;
    d.shape = cospan_shape(static_cast<int>(legs.size()));
    for (const auto& f : legs) d.ob.push_back(f.dom);
    d.ob.push_back(legs[0].cod);
    d.hom = legs;
    return limit(d);
}

CSetMorphism limit_factorize(const CSetDiagramData& d, const LimitResult& lim, const CSet& w,
                             const std::vector<CSetMorphism>& cone) {
    const FinCatPresentation& shape = *d.shape;
    if (cone.size() != d.ob.size()) throw MalformedInput("cone has wrong arity");
    for (size_t g = 0; g < shape.generators.size(); ++g) {
        const Generator& gen = shape.generators[g];
        if (!(compose(cone[gen.src], d.hom[g]).components == cone[gen.tgt].components))
            throw MalformedInput("cone does not commute");
    }
    size_t nschema = w.schema->objects.size();
    CSetMorphism med;
    med.dom = w;
    med.cod = lim.apex;
    med.components.resize(nschema);
    for (size_t c = 0; c < nschema; ++c) {
        std::map<std::vector<int>, int> index;
        for (size_t k = 0; k < lim.tuples[c].size(); ++k)
            index[lim.tuples[c][k]] = static_cast<int>(k);
        for (int e = 0; e < w.parts[c]; ++e) {
            std::vector<int> t(d.ob.size());
            for (size_t j = 0; j < d.ob.size(); ++j) t[j] = cone[j].components[c][e];
            auto it = index.find(t);
            if (it == index.end()) throw MalformedInput("cone does not factor through the limit");
            med.components[c].push_back(it->second);
        }
    }
    return med;
}

// ---------------------------------------------------------------------------
// Colimits
// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) {
        for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[b] = a;
    }
};

} // namespace

ColimitResult colimit(const CSetDiagramData& d) {
    check_functorial(d);
    const FinCatPresentation& shape = *d.shape;
    const FinCatPtr schema = d.ob.empty() ? nullptr : d.ob[0].schema;
    if (!schema) throw MalformedInput("colimit over an empty diagram needs a schema");
    size_t nschema = schema->objects.size();
    size_t nnodes = d.ob.size();

    ColimitResult res;
    res.apex.schema = schema;
    res.apex.parts.assign(nschema, 0);
    res.apex.actions.resize(schema->generators.size());
    res.reps.resize(nschema);

    // Per schema object: quotient the disjoint union by generator images.
    std::vector<std::vector<int>> offset(nschema, std::vector<int>(nnodes, 0));
    std::vector<std::vector<int>> cls(nschema); // global disjoint-union id -> apex elem
    for (size_t c = 0; c < nschema; ++c) {
        int total = 0;
        for (size_t j = 0; j < nnodes; ++j) {
            offset[c][j] = total;
            total += d.ob[j].parts[c];
        }
        UnionFind uf(total);
        for (size_t g = 0; g < shape.generators.size(); ++g) {
            const Generator& gen = shape.generators[g];
            for (int e = 0; e < d.ob[gen.src].parts[c]; ++e)
                uf.merge(offset[c][gen.src] + e,
                         offset[c][gen.tgt] + d.hom[g].components[c][e]);
        }
        cls[c].assign(total, -1);
        for (int i = 0; i < total; ++i) {
            if (uf.find(i) != i) continue;
            cls[c][i] = res.apex.parts[c]++;
            size_t j = 0;
            while (j + 1 < nnodes && offset[c][j + 1] <= i) ++j;
            res.reps[c].emplace_back(static_cast<int>(j), i - offset[c][j]);
        }
        for (int i = 0; i < total; ++i) cls[c][i] = cls[c][uf.find(i)];
    }

    for (size_t g = 0; g < schema->generators.size(); ++g) {
        const Generator& gen = schema->generators[g];
        res.apex.actions[g].assign(res.apex.parts[gen.src], -1);
        for (size_t j = 0; j < nnodes; ++j) {
            for (int e = 0; e < d.ob[j].parts[gen.src]; ++e) {
                int k = cls[gen.src][offset[gen.src][j] + e];
                int img = cls[gen.tgt][offset[gen.tgt][j] + d.ob[j].actions[g][e]];
                if (res.apex.actions[g][k] == -1)
                    res.apex.actions[g][k] = img;
                else if (res.apex.actions[g][k] != img)
                    throw InternalError("colimit: induced action is not well defined");
            }
        }
    }

    for (size_t j = 0; j < nnodes; ++j) {
        CSetMorphism inj;
        inj.dom = d.ob[j];
        inj.cod = res.apex;
        inj.components.resize(nschema);
        for (size_t c = 0; c < nschema; ++c)
            for (int e = 0; e < d.ob[j].parts[c]; ++e)
                inj.components[c].push_back(cls[c][offset[c][j] + e]);
        res.injections.push_back(std::move(inj));
    }
    return res;
}

ColimitResult cset_coproduct(const std::vector<CSet>& xs) {
    if (xs.empty()) throw MalformedInput("coproduct of zero C-sets");
    CSetDiagramData d{discrete_shape(static_cast<int>(xs.size())), xs, {}};
    return colimit(d);
}

ColimitResult cset_coequalizer(const std::vector<CSetMorphism>& fs) {
    if (fs.empty()) throw MalformedInput("coequalizer of an empty family");
    CSetDiagramData d{parallel_shape(static_cast<int>(fs.size())), {fs[0].dom, fs[0].cod}, fs};
    return colimit(d);
}

ColimitResult cset_pushout(const std::vector<CSetMorphism>& legs) {
    if (legs.empty()) throw MalformedInput("pushout of an empty span");
    CSetDiagramData d;
    d.shape = span_shape(static_cast<int>(legs.size()));
    d.ob.push_back(legs[0].dom);
    for (const auto& f : legs) d.ob.push_back(f.cod);
    d.hom = legs;
    return colimit(d);
}

CSetMorphism colimit_factorize(const CSetDiagramData& d, const ColimitResult& col, const CSet& w,
                               const std::vector<CSetMorphism>& cocone) {
    const FinCatPresentation& shape = *d.shape;
    if (cocone.size() != d.ob.size()) throw MalformedInput("cocone has wrong arity");
    for (size_t g = 0; g < shape.generators.size(); ++g) {
        const Generator& gen = shape.generators[g];
        if (!(compose(d.hom[g], cocone[gen.tgt]).components == cocone[gen.src].components))
            throw MalformedInput("cocone does not commute");
    }
    size_t nschema = w.schema->objects.size();
    CSetMorphism med;
    med.dom = col.apex;
    med.cod = w;
    med.components.resize(nschema);
    for (size_t c = 0; c < nschema; ++c) {
        med.components[c].resize(col.apex.parts[c], -1);
        for (size_t k = 0; k < col.reps[c].size(); ++k) {
            auto [j, e] = col.reps[c][k];
            med.components[c][k] = cocone[j].components[c][e];
        }
        // Every class member must agree with its representative.
        for (size_t j = 0; j < d.ob.size(); ++j)
            for (int e = 0; e < d.ob[j].parts[c]; ++e) {
                int k = col.injections[j].components[c][e];
                if (med.components[c][k] != cocone[j].components[c][e])
                    throw MalformedInput("cocone does not factor through the colimit");
            }
    }
    return med;
}

QuotientResult quotient_by_pairs(const CSet& y,
                                 const std::vector<std::vector<std::pair<int, int>>>& pairs) {
    const FinCatPresentation& schema = *y.schema;
    size_t nschema = schema.objects.size();
    if (pairs.size() != nschema) throw MalformedInput("quotient_by_pairs: arity mismatch");

    std::vector<UnionFind> uf;
    uf.reserve(nschema);
    for (size_t c = 0; c < nschema; ++c) uf.emplace_back(y.parts[c]);

    // Congruence closure: merging two elements merges their action images.
    std::vector<std::tuple<int, int, int>> work; // (object, a, b)
    for (size_t c = 0; c < nschema; ++c)
        for (auto [a, b] : pairs[c]) work.emplace_back(static_cast<int>(c), a, b);
    std::vector<std::vector<int>> gens_out(nschema);
    for (size_t g = 0; g < schema.generators.size(); ++g)
        gens_out[schema.generators[g].src].push_back(static_cast<int>(g));
    while (!work.empty()) {
        auto [c, a, b] = work.back();
        work.pop_back();
        a = uf[c].find(a);
        b = uf[c].find(b);
        if (a == b) continue;
        uf[c].merge(a, b);
        for (int g : gens_out[c])
            work.emplace_back(schema.generators[g].tgt, y.actions[g][a], y.actions[g][b]);
    }

    QuotientResult res;
    res.apex.schema = y.schema;
    res.apex.parts.assign(nschema, 0);
    res.apex.actions.resize(schema.generators.size());
    res.class_of.resize(nschema);
    for (size_t c = 0; c < nschema; ++c) {
        res.class_of[c].assign(y.parts[c], -1);
        for (int e = 0; e < y.parts[c]; ++e)
            if (uf[c].find(e) == e) res.class_of[c][e] = res.apex.parts[c]++;
        for (int e = 0; e < y.parts[c]; ++e) res.class_of[c][e] = res.class_of[c][uf[c].find(e)];
    }
    for (size_t g = 0; g < schema.generators.size(); ++g) {
        const Generator& gen = schema.generators[g];
        res.apex.actions[g].assign(res.apex.parts[gen.src], -1);
        for (int e = 0; e < y.parts[gen.src]; ++e)
            res.apex.actions[g][res.class_of[gen.src][e]] =
                res.class_of[gen.tgt][y.actions[g][e]];
    }
    res.proj.dom = y;
    res.proj.cod = res.apex;
    res.proj.components = res.class_of;
    return res;
}

} // namespace modelspace

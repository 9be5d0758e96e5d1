#include "modelspace/fincat.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include <fmt/format.h>

namespace modelspace {

int FinCatPresentation::object_index(const std::string& name) const {
    for (size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == name) return static_cast<int>(i);
    return -1;
}

int FinCatPresentation::generator_index(const std::string& name) const {
    for (size_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == name) return static_cast<int>(i);
    return -1;
}

FinCatPtr make_fincat(FinCatPresentation p) {
    validate_presentation(p);
    return std::make_shared<const FinCatPresentation>(std::move(p));
}

bool path_composable(const FinCatPresentation& p, const Path& path) {
    if (path.empty()) return path.at >= 0 && path.at < static_cast<int>(p.objects.size());
    for (size_t i = 0; i < path.gens.size(); ++i) {
        int g = path.gens[i];
        if (g < 0 || g >= static_cast<int>(p.generators.size())) return false;
        if (i > 0 && p.generators[path.gens[i - 1]].tgt != p.generators[g].src) return false;
    }
    return true;
}

int path_src(const FinCatPresentation& p, const Path& path) {
    if (path.empty()) {
        if (path.at < 0) throw MalformedInput("identity path without a stated object");
        return path.at;
    }
    return p.generators[path.gens.front()].src;
}

int path_tgt(const FinCatPresentation& p, const Path& path) {
    if (path.empty()) {
        if (path.at < 0) throw MalformedInput("identity path without a stated object");
        return path.at;
    }
    return p.generators[path.gens.back()].tgt;
}

Path concat(const Path& a, const Path& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    Path r = a;
    r.gens.insert(r.gens.end(), b.gens.begin(), b.gens.end());
    r.at = -1;
    return r;
}

void validate_presentation(const FinCatPresentation& p) {
    std::set<std::string> names(p.objects.begin(), p.objects.end());
    if (names.size() != p.objects.size())
        throw MalformedInput("duplicate object names");
    std::set<std::string> gnames;
    for (const auto& g : p.generators) {
        if (!gnames.insert(g.name).second)
            throw MalformedInput("duplicate generator name: " + g.name);
        if (g.src < 0 || g.src >= static_cast<int>(p.objects.size()) ||
            g.tgt < 0 || g.tgt >= static_cast<int>(p.objects.size()))
            throw MalformedInput("generator endpoint out of range: " + g.name);
    }
    for (size_t i = 0; i < p.equations.size(); ++i) {
        const auto& [lhs, rhs] = p.equations[i];
        if (!path_composable(p, lhs) || !path_composable(p, rhs))
            throw MalformedInput(fmt::format("equation {} has a non-composable side", i));
        if (path_src(p, lhs) != path_src(p, rhs) || path_tgt(p, lhs) != path_tgt(p, rhs))
            throw MalformedInput(fmt::format("equation {} has mismatched endpoints", i));
    }
}

namespace {

// Object sitting at position k inside a path whose source is src_obj.
int object_at(const FinCatPresentation& p, const std::vector<int>& w, size_t k, int src_obj) {
    if (k == 0) return src_obj;
    return p.generators[w[k - 1]].tgt;
}

// One side of an equation viewed as a rewrite pattern.
struct Side {
    const std::vector<int>* gens;
    int at; // object of an empty side
};

void neighbors(const FinCatPresentation& p, const std::vector<int>& w, int src_obj,
               std::vector<std::vector<int>>& out) {
    out.clear();
    for (const auto& [lhs, rhs] : p.equations) {
        Side sides[2] = {{&lhs.gens, lhs.empty() ? path_src(p, lhs) : -1},
                         {&rhs.gens, rhs.empty() ? path_src(p, rhs) : -1}};
        for (int dir = 0; dir < 2; ++dir) {
            const Side& pat = sides[dir];
            const Side& rep = sides[1 - dir];
            if (!pat.gens->empty()) {
                size_t n = pat.gens->size();
                if (w.size() < n) continue;
                for (size_t k = 0; k + n <= w.size(); ++k) {
                    if (!std::equal(pat.gens->begin(), pat.gens->end(), w.begin() + k))
                        continue;
                    std::vector<int> nw(w.begin(), w.begin() + k);
                    nw.insert(nw.end(), rep.gens->begin(), rep.gens->end());
                    nw.insert(nw.end(), w.begin() + k + n, w.end());
                    out.push_back(std::move(nw));
                }
            } else {
                // Inserting the other side wherever the identity's object occurs.
                for (size_t k = 0; k <= w.size(); ++k) {
                    if (object_at(p, w, k, src_obj) != pat.at) continue;
                    std::vector<int> nw(w.begin(), w.begin() + k);
                    nw.insert(nw.end(), rep.gens->begin(), rep.gens->end());
                    nw.insert(nw.end(), w.begin() + k, w.end());
                    out.push_back(std::move(nw));
                }
            }
        }
    }
}

} // namespace

Tri path_equal(const FinCatPresentation& p, const Path& lhs, const Path& rhs, int budget) {
    if (!path_composable(p, lhs) || !path_composable(p, rhs))
        throw MalformedInput("path_equal: non-composable path");
    if (path_src(p, lhs) != path_src(p, rhs) || path_tgt(p, lhs) != path_tgt(p, rhs))
        throw MalformedInput("path_equal: endpoint mismatch");
    if (lhs.gens == rhs.gens) return Tri::equal;
    if (p.is_free()) return Tri::distinct;

    int src_obj = path_src(p, lhs);
    std::set<std::vector<int>> seen[2] = {{lhs.gens}, {rhs.gens}};
    std::deque<std::vector<int>> frontier[2] = {{lhs.gens}, {rhs.gens}};
    bool closed[2] = {false, false};
    int expansions = 0;
    std::vector<std::vector<int>> nbrs;

    while (expansions < budget) {
        // Expand the smaller open frontier first.
        int side = -1;
        for (int s : {0, 1})
            if (!frontier[s].empty() &&
                (side < 0 || frontier[s].size() < frontier[side].size()))
                side = s;
        if (side < 0) break; // both closed, no intersection
        auto w = std::move(frontier[side].front());
        frontier[side].pop_front();
        ++expansions;
        neighbors(p, w, src_obj, nbrs);
        for (auto& nw : nbrs) {
            if (seen[1 - side].count(nw)) return Tri::equal;
            if (seen[side].insert(nw).second) frontier[side].push_back(nw);
        }
        if (frontier[0].empty()) closed[0] = true;
        if (frontier[1].empty()) closed[1] = true;
        // A closed side holds the entire congruence class of its seed; no
        // intersection so far means the classes differ.
        if (closed[0] || closed[1]) break;
    }
    if (closed[0] || closed[1]) return Tri::distinct;
    return Tri::unknown;
}

// ---------------------------------------------------------------------------
// Functors
// ---------------------------------------------------------------------------

Path map_path(const FinFunctor& f, const Path& p) {
    if (p.empty()) return identity_path(f.object_map.at(p.at));
    Path out;
    for (int g : p.gens) {
        const Path& img = f.generator_map.at(g);
        out.gens.insert(out.gens.end(), img.gens.begin(), img.gens.end());
    }
    if (out.gens.empty()) out.at = f.object_map.at(path_src(*f.dom, p));
    return out;
}

void check_functor_structure(const FinFunctor& f) {
    if (!f.dom || !f.cod) throw MalformedInput("functor without dom/cod");
    if (f.object_map.size() != f.dom->objects.size() ||
        f.generator_map.size() != f.dom->generators.size())
        throw MalformedInput("functor map sizes do not match the domain");
    for (int o : f.object_map)
        if (o < 0 || o >= static_cast<int>(f.cod->objects.size()))
            throw MalformedInput("functor object image out of range");
    for (size_t g = 0; g < f.generator_map.size(); ++g) {
        const Path& img = f.generator_map[g];
        if (!path_composable(*f.cod, img))
            throw MalformedInput("functor generator image is not composable");
        int s = f.object_map[f.dom->generators[g].src];
        int t = f.object_map[f.dom->generators[g].tgt];
        if (path_src(*f.cod, img) != s || path_tgt(*f.cod, img) != t)
            throw MalformedInput(
                fmt::format("functor image of generator '{}' has wrong endpoints",
                            f.dom->generators[g].name));
    }
}

Tri verify_functor(const FinFunctor& f, int budget) {
    check_functor_structure(f);
    bool unknown = false;
    for (const auto& [lhs, rhs] : f.dom->equations) {
        Tri r = path_equal(*f.cod, map_path(f, lhs), map_path(f, rhs), budget);
        if (r == Tri::distinct) return Tri::distinct;
        if (r == Tri::unknown) unknown = true;
    }
    return unknown ? Tri::unknown : Tri::equal;
}

FinFunctor identity_functor(const FinCatPtr& c) {
    FinFunctor f;
    f.dom = f.cod = c;
    f.object_map.resize(c->objects.size());
    for (size_t i = 0; i < c->objects.size(); ++i) f.object_map[i] = static_cast<int>(i);
    for (size_t g = 0; g < c->generators.size(); ++g)
        f.generator_map.push_back(single(static_cast<int>(g)));
    return f;
}

FinFunctor compose(const FinFunctor& f, const FinFunctor& g) {
    if (*f.cod != *g.dom) throw MalformedInput("compose: functor endpoints do not match");
    FinFunctor h;
    h.dom = f.dom;
    h.cod = g.cod;
    for (int o : f.object_map) h.object_map.push_back(g.object_map[o]);
    for (const Path& p : f.generator_map) h.generator_map.push_back(map_path(g, p));
    h.validity = (f.validity == EqCheck::verified && g.validity == EqCheck::verified)
                     ? EqCheck::verified
                     : EqCheck::unverified;
    return h;
}

bool functors_equal_on_generators(const FinFunctor& f, const FinFunctor& g, int budget) {
    if (*f.dom != *g.dom || *f.cod != *g.cod) return false;
    if (f.object_map != g.object_map) return false;
    for (size_t i = 0; i < f.generator_map.size(); ++i)
        if (path_equal(*f.cod, f.generator_map[i], g.generator_map[i], budget) != Tri::equal)
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Product
// ---------------------------------------------------------------------------

namespace {

std::string tuple_name(const std::vector<std::string>& parts) {
    std::string s = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += parts[i];
    }
    return s + ")";
}

// Row-major enumeration of object tuples, factor 0 most significant.
void for_each_tuple(const std::vector<int>& sizes,
                    const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> t(sizes.size(), 0);
    for (int s : sizes)
        if (s == 0) return;
    while (true) {
        fn(t);
        int i = static_cast<int>(t.size()) - 1;
        while (i >= 0 && ++t[i] == sizes[i]) t[i--] = 0;
        if (i < 0) break;
    }
}

} // namespace

int FinCatProduct::object_of(const std::vector<int>& tuple) const {
    for (size_t i = 0; i < object_tuple.size(); ++i)
        if (object_tuple[i] == tuple) return static_cast<int>(i);
    return -1;
}

int FinCatProduct::generator_of(int factor, int gen, const std::vector<int>& objects) const {
    for (size_t i = 0; i < gen_origin.size(); ++i) {
        const auto& o = gen_origin[i];
        if (o.factor == factor && o.gen == gen && o.objects == objects)
            return static_cast<int>(i);
    }
    return -1;
}

FinCatProduct product(const std::vector<FinCatPtr>& factors) {
    if (factors.empty()) throw MalformedInput("product of zero presentations");
    size_t n = factors.size();
    FinCatProduct res;
    FinCatPresentation apex;

    std::vector<int> obj_sizes;
    for (const auto& f : factors) obj_sizes.push_back(static_cast<int>(f->objects.size()));

    for_each_tuple(obj_sizes, [&](const std::vector<int>& t) {
        std::vector<std::string> names;
        for (size_t i = 0; i < n; ++i) names.push_back(factors[i]->objects[t[i]]);
        apex.objects.push_back(tuple_name(names));
        res.object_tuple.push_back(t);
    });

    auto lift_object = [&](const std::vector<int>& t) {
        int idx = res.object_of(t);
        if (idx < 0) throw InternalError("product: missing object tuple");
        return idx;
    };

    // Generators: one per (factor generator, objects of the other factors).
    for (size_t i = 0; i < n; ++i) {
        for (size_t g = 0; g < factors[i]->generators.size(); ++g) {
            const Generator& gen = factors[i]->generators[g];
            std::vector<int> passive_sizes = obj_sizes;
            passive_sizes[i] = 1; // placeholder; coordinate i is the moving one
            for_each_tuple(passive_sizes, [&](const std::vector<int>& t0) {
                std::vector<int> src_t = t0, tgt_t = t0;
                src_t[i] = gen.src;
                tgt_t[i] = gen.tgt;
                std::vector<std::string> names;
                for (size_t k = 0; k < n; ++k)
                    names.push_back(k == i ? gen.name : factors[k]->objects[t0[k]]);
                apex.generators.push_back(
                    {tuple_name(names), lift_object(src_t), lift_object(tgt_t)});
                res.gen_origin.push_back({static_cast<int>(i), static_cast<int>(g), src_t});
            });
        }
    }

    auto lift_path = [&](size_t factor, const Path& p, const std::vector<int>& passive) {
        // passive: full tuple whose coordinate `factor` is ignored
        Path out;
        std::vector<int> objs = passive;
        for (int g : p.gens) {
            objs[factor] = factors[factor]->generators[g].src;
            int pg = res.generator_of(static_cast<int>(factor), g, objs);
            if (pg < 0) throw InternalError("product: missing lifted generator");
            out.gens.push_back(pg);
        }
        if (out.gens.empty()) {
            objs[factor] = path_src(*factors[factor], p);
            out.at = lift_object(objs);
        }
        return out;
    };

    // Lifted factor equations.
    for (size_t i = 0; i < n; ++i) {
        for (const auto& [lhs, rhs] : factors[i]->equations) {
            std::vector<int> passive_sizes = obj_sizes;
            passive_sizes[i] = 1;
            for_each_tuple(passive_sizes, [&](const std::vector<int>& t0) {
                apex.equations.emplace_back(lift_path(i, lhs, t0), lift_path(i, rhs, t0));
            });
        }
    }

    // Interchange squares for generators in distinct factors.
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            for (size_t gi = 0; gi < factors[i]->generators.size(); ++gi) {
                for (size_t gj = 0; gj < factors[j]->generators.size(); ++gj) {
                    const Generator& a = factors[i]->generators[gi];
                    const Generator& b = factors[j]->generators[gj];
                    std::vector<int> passive_sizes = obj_sizes;
                    passive_sizes[i] = passive_sizes[j] = 1;
                    for_each_tuple(passive_sizes, [&](const std::vector<int>& t0) {
                        std::vector<int> o = t0;
                        auto pg = [&](size_t f, size_t g, int oi, int oj) {
                            o[i] = oi;
                            o[j] = oj;
                            o[f] = factors[f]->generators[g].src;
                            return res.generator_of(static_cast<int>(f),
                                                    static_cast<int>(g), o);
                        };
                        Path first{{pg(i, gi, a.src, b.src), pg(j, gj, a.tgt, b.src)}, -1};
                        Path second{{pg(j, gj, a.src, b.src), pg(i, gi, a.src, b.tgt)}, -1};
                        apex.equations.emplace_back(first, second);
                    });
                }
            }
        }
    }

    res.apex = make_fincat(std::move(apex));

    for (size_t i = 0; i < n; ++i) {
        FinFunctor proj;
        proj.dom = res.apex;
        proj.cod = factors[i];
        for (const auto& t : res.object_tuple) proj.object_map.push_back(t[i]);
        for (const auto& o : res.gen_origin) {
            if (o.factor == static_cast<int>(i))
                proj.generator_map.push_back(single(o.gen));
            else
                proj.generator_map.push_back(identity_path(o.objects[i]));
        }
        res.projections.push_back(std::move(proj));
    }
    return res;
}

FinFunctor product_functor(const std::vector<FinFunctor>& fs, const FinCatProduct& dom,
                           const FinCatProduct& cod) {
    if (!dom.object_tuple.empty() && fs.size() != dom.object_tuple[0].size())
        throw MalformedInput("product_functor: arity mismatch");
    FinFunctor h;
    h.dom = dom.apex;
    h.cod = cod.apex;
    for (const auto& t : dom.object_tuple) {
        std::vector<int> img(t.size());
        for (size_t i = 0; i < t.size(); ++i) img[i] = fs[i].object_map[t[i]];
        int o = cod.object_of(img);
        if (o < 0) throw InternalError("product_functor: missing image tuple");
        h.object_map.push_back(o);
    }
    for (const auto& origin : dom.gen_origin) {
        const Path& img = fs[origin.factor].generator_map[origin.gen];
        std::vector<int> objs(origin.objects.size());
        for (size_t i = 0; i < objs.size(); ++i)
            objs[i] = fs[i].object_map[origin.objects[i]];
        Path out;
        for (int g : img.gens) {
            objs[origin.factor] = fs[origin.factor].cod->generators[g].src;
            int pg = cod.generator_of(origin.factor, g, objs);
            if (pg < 0) throw InternalError("product_functor: missing lifted generator");
            out.gens.push_back(pg);
        }
        if (out.gens.empty()) {
            objs[origin.factor] =
                path_src(*fs[origin.factor].cod, img);
            out.at = cod.object_of(objs);
        }
        h.generator_map.push_back(std::move(out));
    }
    for (const auto& f : fs)
        if (f.validity == EqCheck::unverified) h.validity = EqCheck::unverified;
    return h;
}

// ---------------------------------------------------------------------------
// Equalizer
// ---------------------------------------------------------------------------

FinCatEqualizer equalizer(const std::vector<FinFunctor>& fs) {
    if (fs.empty()) throw MalformedInput("equalizer of an empty family");
    for (const auto& f : fs) {
        if (*f.dom != *fs[0].dom || *f.cod != *fs[0].cod)
            throw MalformedInput("equalizer: functors must be parallel");
    }
    if (!fs[0].cod->is_free())
        throw NonFreeCodomain("equalizer requires a free codomain presentation");

    const FinCatPresentation& A = *fs[0].dom;
    FinCatEqualizer res;
    FinCatPresentation sub;
    std::vector<int> obj_new(A.objects.size(), -1);
    for (size_t o = 0; o < A.objects.size(); ++o) {
        bool agree = true;
        for (size_t i = 1; i < fs.size(); ++i)
            if (fs[i].object_map[o] != fs[0].object_map[o]) agree = false;
        if (agree) {
            obj_new[o] = static_cast<int>(sub.objects.size());
            sub.objects.push_back(A.objects[o]);
            res.object_sel.push_back(static_cast<int>(o));
        }
    }
    std::vector<int> gen_new(A.generators.size(), -1);
    for (size_t g = 0; g < A.generators.size(); ++g) {
        bool agree = true;
        for (size_t i = 1; i < fs.size(); ++i)
            if (!(fs[i].generator_map[g] == fs[0].generator_map[g])) agree = false;
        if (!agree) continue;
        const Generator& gen = A.generators[g];
        if (obj_new[gen.src] < 0 || obj_new[gen.tgt] < 0) continue;
        gen_new[g] = static_cast<int>(sub.generators.size());
        sub.generators.push_back({gen.name, obj_new[gen.src], obj_new[gen.tgt]});
        res.gen_sel.push_back(static_cast<int>(g));
    }
    auto restrict_path = [&](const Path& p) -> std::pair<bool, Path> {
        Path out;
        for (int g : p.gens) {
            if (gen_new[g] < 0) return {false, {}};
            out.gens.push_back(gen_new[g]);
        }
        if (out.gens.empty()) {
            if (obj_new[p.at] < 0) return {false, {}};
            out.at = obj_new[p.at];
        }
        return {true, out};
    };
    for (const auto& [lhs, rhs] : A.equations) {
        auto [okl, l] = restrict_path(lhs);
        auto [okr, r] = restrict_path(rhs);
        if (okl && okr) sub.equations.emplace_back(l, r);
    }
    res.sub = make_fincat(std::move(sub));

    FinFunctor incl;
    incl.dom = res.sub;
    incl.cod = fs[0].dom;
    incl.object_map = res.object_sel;
    for (int g : res.gen_sel) incl.generator_map.push_back(single(g));
    res.inclusion = std::move(incl);
    return res;
}

// ---------------------------------------------------------------------------
// Coproduct
// ---------------------------------------------------------------------------

FinCatCoproduct coproduct(const std::vector<FinCatPtr>& summands) {
    FinCatCoproduct res;
    FinCatPresentation sum;
    for (size_t i = 0; i < summands.size(); ++i) {
        const FinCatPresentation& s = *summands[i];
        res.object_offset.push_back(static_cast<int>(sum.objects.size()));
        res.gen_offset.push_back(static_cast<int>(sum.generators.size()));
        std::string prefix = fmt::format("in{}_", i);
        for (const auto& o : s.objects) sum.objects.push_back(prefix + o);
        for (const auto& g : s.generators)
            sum.generators.push_back(
                {prefix + g.name, g.src + res.object_offset[i], g.tgt + res.object_offset[i]});
        for (const auto& [lhs, rhs] : s.equations) {
            auto shift = [&](const Path& p) {
                Path out = p;
                for (int& g : out.gens) g += res.gen_offset[i];
                if (out.empty()) out.at += res.object_offset[i];
                return out;
            };
            sum.equations.emplace_back(shift(lhs), shift(rhs));
        }
    }
    res.apex = make_fincat(std::move(sum));
    for (size_t i = 0; i < summands.size(); ++i) {
        FinFunctor inc;
        inc.dom = summands[i];
        inc.cod = res.apex;
        for (size_t o = 0; o < summands[i]->objects.size(); ++o)
            inc.object_map.push_back(static_cast<int>(o) + res.object_offset[i]);
        for (size_t g = 0; g < summands[i]->generators.size(); ++g)
            inc.generator_map.push_back(single(static_cast<int>(g) + res.gen_offset[i]));
        res.inclusions.push_back(std::move(inc));
    }
    return res;
}

// ---------------------------------------------------------------------------
// Coequalizer and pushout
// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) {
        for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[b] = a; // least id wins
    }
};

} // namespace

FinCatCoequalizer coequalizer(const std::vector<FinFunctor>& fs) {
    if (fs.empty()) throw MalformedInput("coequalizer of an empty family");
    for (const auto& f : fs)
        if (*f.dom != *fs[0].dom || *f.cod != *fs[0].cod)
            throw MalformedInput("coequalizer: functors must be parallel");

    const FinCatPresentation& A = *fs[0].dom;
    const FinCatPresentation& B = *fs[0].cod;

    UnionFind uf(B.objects.size());
    for (size_t a = 0; a < A.objects.size(); ++a)
        for (size_t i = 1; i < fs.size(); ++i)
            uf.merge(fs[0].object_map[a], fs[i].object_map[a]);

    FinCatCoequalizer res;
    res.object_class.assign(B.objects.size(), -1);
    FinCatPresentation quo;
    for (size_t o = 0; o < B.objects.size(); ++o) {
        if (uf.find(static_cast<int>(o)) != static_cast<int>(o)) continue;
        res.object_class[o] = static_cast<int>(quo.objects.size());
        quo.objects.push_back(B.objects[o]);
    }
    for (size_t o = 0; o < B.objects.size(); ++o)
        res.object_class[o] = res.object_class[uf.find(static_cast<int>(o))];

    for (const auto& g : B.generators)
        quo.generators.push_back({g.name, res.object_class[g.src], res.object_class[g.tgt]});

    auto requote = [&](const Path& p) {
        Path out = p;
        if (out.empty()) out.at = res.object_class[out.at];
        return out;
    };
    for (const auto& [lhs, rhs] : B.equations)
        quo.equations.emplace_back(requote(lhs), requote(rhs));

    // Impose F_i(g) = F_j(g); chaining against F_0 generates all pairs.
    for (size_t g = 0; g < A.generators.size(); ++g) {
        for (size_t i = 1; i < fs.size(); ++i) {
            Path l = requote(fs[0].generator_map[g]);
            Path r = requote(fs[i].generator_map[g]);
            if (!(l == r)) quo.equations.emplace_back(l, r);
        }
    }
    res.apex = make_fincat(std::move(quo));

    FinFunctor proj;
    proj.dom = fs[0].cod;
    proj.cod = res.apex;
    proj.object_map = res.object_class;
    for (size_t g = 0; g < B.generators.size(); ++g)
        proj.generator_map.push_back(single(static_cast<int>(g)));
    res.proj = std::move(proj);
    return res;
}

FinCatPushout pushout(const FinFunctor& f, const FinFunctor& g) {
    if (*f.dom != *g.dom) throw MalformedInput("pushout: span legs must share their domain");
    FinCatCoproduct cp = coproduct({f.cod, g.cod});
    FinCatCoequalizer ce = coequalizer({compose(f, cp.inclusions[0]), compose(g, cp.inclusions[1])});
    FinCatPushout res;
    res.apex = ce.apex;
    res.left = compose(cp.inclusions[0], ce.proj);
    res.right = compose(cp.inclusions[1], ce.proj);
    return res;
}

// ---------------------------------------------------------------------------
// Small shapes
// ---------------------------------------------------------------------------

FinCatPtr terminal_shape() {
    FinCatPresentation p;
    p.objects = {"*"};
    return make_fincat(std::move(p));
}

FinCatPtr discrete_shape(int n) {
    FinCatPresentation p;
    for (int i = 0; i < n; ++i) p.objects.push_back(std::to_string(i));
    return make_fincat(std::move(p));
}

FinCatPtr path_shape(int objects) {
    FinCatPresentation p;
    for (int i = 0; i < objects; ++i) p.objects.push_back(std::to_string(i));
    for (int i = 0; i + 1 < objects; ++i)
        p.generators.push_back({fmt::format("f{}", i), i, i + 1});
    return make_fincat(std::move(p));
}

FinCatPtr parallel_shape(int arrows) {
    FinCatPresentation p;
    p.objects = {"0", "1"};
    for (int i = 0; i < arrows; ++i) p.generators.push_back({fmt::format("a{}", i), 0, 1});
    return make_fincat(std::move(p));
}

FinCatPtr cospan_shape(int legs) {
    FinCatPresentation p;
    for (int i = 0; i < legs; ++i) p.objects.push_back(std::to_string(i));
    p.objects.push_back("apex");
    for (int i = 0; i < legs; ++i) p.generators.push_back({fmt::format("l{}", i), i, legs});
    return make_fincat(std::move(p));
}

FinCatPtr span_shape(int legs) {
    FinCatPresentation p;
    p.objects.push_back("apex");
    for (int i = 0; i < legs; ++i) p.objects.push_back(std::to_string(i));
    for (int i = 0; i < legs; ++i) p.generators.push_back({fmt::format("l{}", i), 0, i + 1});
    return make_fincat(std::move(p));
}

} // namespace modelspace

#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace oracles {

std::vector<Path> all_paths(const FinCatPresentation& p, int from, int to, int maxlen) {
    std::vector<Path> out;
    std::function<void(int, std::vector<int>&)> walk = [&](int at, std::vector<int>& acc) {
        if (at == to) out.push_back(Path{acc, acc.empty() ? from : -1});
        if (static_cast<int>(acc.size()) >= maxlen) return;
        for (size_t g = 0; g < p.generators.size(); ++g) {
            if (p.generators[g].src != at) continue;
            acc.push_back(static_cast<int>(g));
            walk(p.generators[g].tgt, acc);
            acc.pop_back();
        }
    };
    std::vector<int> acc;
    walk(from, acc);
    return out;
}

bool congruent_upto(const FinCatPresentation& p, const Path& lhs, const Path& rhs, int maxlen) {
    int from = path_src(p, lhs), to = path_tgt(p, lhs);
    std::vector<Path> univ = all_paths(p, from, to, maxlen);
    auto index_of = [&](const std::vector<int>& gens) {
        for (size_t i = 0; i < univ.size(); ++i)
            if (univ[i].gens == gens) return static_cast<int>(i);
        return -1;
    };
    int a = index_of(lhs.gens), b = index_of(rhs.gens);
    if (a < 0 || b < 0) return false;

    std::vector<int> parent(univ.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto object_at = [&](const std::vector<int>& w, size_t k) {
        return k == 0 ? from : p.generators[w[k - 1]].tgt;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Path& w : univ) {
            int wi = index_of(w.gens);
            for (const auto& [l, r] : p.equations) {
                for (int dir = 0; dir < 2; ++dir) {
                    const Path& pat = dir == 0 ? l : r;
                    const Path& rep = dir == 0 ? r : l;
                    if (!pat.gens.empty()) {
                        for (size_t k = 0; k + pat.gens.size() <= w.gens.size(); ++k) {
                            if (!std::equal(pat.gens.begin(), pat.gens.end(),
                                            w.gens.begin() + k))
                                continue;
                            std::vector<int> nw(w.gens.begin(), w.gens.begin() + k);
                            nw.insert(nw.end(), rep.gens.begin(), rep.gens.end());
                            nw.insert(nw.end(), w.gens.begin() + k + pat.gens.size(),
                                      w.gens.end());
                            int ni = index_of(nw);
                            if (ni >= 0 && find(ni) != find(wi)) {
                                parent[find(ni)] = find(wi);
                                changed = true;
                            }
                        }
                    } else {
                        for (size_t k = 0; k <= w.gens.size(); ++k) {
                            if (object_at(w.gens, k) != path_src(p, pat)) continue;
                            std::vector<int> nw(w.gens.begin(), w.gens.begin() + k);
                            nw.insert(nw.end(), rep.gens.begin(), rep.gens.end());
                            nw.insert(nw.end(), w.gens.begin() + k, w.gens.end());
                            int ni = index_of(nw);
                            if (ni >= 0 && find(ni) != find(wi)) {
                                parent[find(ni)] = find(wi);
                                changed = true;
                            }
                        }
                    }
                }
            }
        }
    }
    return find(a) == find(b);
}

std::vector<FinFunctor> enumerate_functors(const FinCatPtr& a, const FinCatPtr& b,
                                           int max_path_len, int closure_len) {
    std::vector<FinFunctor> out;
    size_t nobj = a->objects.size(), ngen = a->generators.size();
    std::vector<int> omap(nobj, 0);
    std::function<void(size_t)> pick_gen;
    std::function<void(size_t)> pick_obj = [&](size_t i) {
        if (i == nobj) {
            FinFunctor f;
            f.dom = a;
            f.cod = b;
            f.object_map = omap;
            f.generator_map.assign(ngen, Path{});
            std::function<void(size_t)> fill = [&](size_t g) {
                if (g == ngen) {
                    bool ok = true;
                    for (const auto& [lhs, rhs] : a->equations) {
                        if (!congruent_upto(*b, map_path(f, lhs), map_path(f, rhs),
                                            closure_len)) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) out.push_back(f);
                    return;
                }
                int s = omap[a->generators[g].src], t = omap[a->generators[g].tgt];
                for (const Path& img : all_paths(*b, s, t, max_path_len)) {
                    f.generator_map[g] = img;
                    fill(g + 1);
                }
            };
            fill(0);
            return;
        }
        for (size_t o = 0; o < b->objects.size(); ++o) {
            omap[i] = static_cast<int>(o);
            pick_obj(i + 1);
        }
    };
    if (b->objects.empty()) return nobj == 0 ? std::vector<FinFunctor>{FinFunctor{
                                                   a, b, {}, {}, EqCheck::verified}}
                                             : out;
    pick_obj(0);
    return out;
}

std::vector<CSetMorphism> enumerate_homs(const CSet& x, const CSet& y, bool monic) {
    std::vector<CSetMorphism> out;
    size_t nobj = x.schema->objects.size();
    std::vector<std::vector<int>> comp(nobj);
    for (size_t c = 0; c < nobj; ++c) comp[c].assign(x.parts[c], 0);

    std::function<void(size_t, int)> fill = [&](size_t c, int e) {
        while (c < nobj && e >= x.parts[c]) {
            ++c;
            e = 0;
        }
        if (c == nobj) {
            CSetMorphism m{x, y, comp};
            if (is_natural(m) && (!monic || is_mono(m))) out.push_back(m);
            return;
        }
        for (int v = 0; v < y.parts[c]; ++v) {
            comp[c][e] = v;
            fill(c, e + 1);
        }
    };
    for (size_t c = 0; c < nobj; ++c)
        if (x.parts[c] > 0 && y.parts[c] == 0) return out;
    fill(0, 0);
    return out;
}

std::vector<std::vector<std::vector<int>>> enumerate_set_nats(const SetDiagram& x,
                                                              const SetDiagram& y) {
    std::vector<std::vector<std::vector<int>>> out;
    size_t nobj = x.shape->objects.size();
    std::vector<std::vector<int>> comp(nobj);
    for (size_t c = 0; c < nobj; ++c) comp[c].assign(x.sets[c], 0);
    auto natural = [&]() {
        for (size_t g = 0; g < x.shape->generators.size(); ++g) {
            const Generator& gen = x.shape->generators[g];
            for (int e = 0; e < x.sets[gen.src]; ++e)
                if (comp[gen.tgt][x.maps[g][e]] != y.maps[g][comp[gen.src][e]]) return false;
        }
        return true;
    };
    std::function<void(size_t, int)> fill = [&](size_t c, int e) {
        while (c < nobj && e >= x.sets[c]) {
            ++c;
            e = 0;
        }
        if (c == nobj) {
            if (natural()) out.push_back(comp);
            return;
        }
        for (int v = 0; v < y.sets[c]; ++v) {
            comp[c][e] = v;
            fill(c, e + 1);
        }
    };
    for (size_t c = 0; c < nobj; ++c)
        if (x.sets[c] > 0 && y.sets[c] == 0) return out;
    fill(0, 0);
    return out;
}

std::vector<int> comma_lan_sizes(const SetDiagram& x, const FinFunctor& f, int maxlen) {
    const FinCatPresentation& J = *f.dom;
    const FinCatPresentation& I = *f.cod;
    std::vector<int> sizes;
    for (size_t i = 0; i < I.objects.size(); ++i) {
        // Objects of the comma category F down-to i: (j, path F(j) -> i).
        struct CommaOb {
            int j;
            std::vector<int> path;
        };
        std::vector<CommaOb> obs;
        std::vector<int> offset;
        int total = 0;
        for (size_t j = 0; j < J.objects.size(); ++j) {
            for (const Path& p :
                 all_paths(I, f.object_map[j], static_cast<int>(i), maxlen)) {
                obs.push_back({static_cast<int>(j), p.gens});
                offset.push_back(total);
                total += x.sets[j];
            }
        }
        // Quotient the disjoint union of X(j) by comma morphisms: a dom
        // generator g: j -> j' with F(g);p' = p.
        std::vector<int> parent(total);
        for (int k = 0; k < total; ++k) parent[k] = k;
        std::function<int(int)> find = [&](int a) {
            while (parent[a] != a) a = parent[a] = parent[parent[a]];
            return a;
        };
        for (size_t a = 0; a < obs.size(); ++a) {
            for (size_t g = 0; g < J.generators.size(); ++g) {
                if (J.generators[g].src != obs[a].j) continue;
                int j2 = J.generators[g].tgt;
                std::vector<int> composite = f.generator_map[g].gens;
                // want p = F(g);p'  =>  p' = p minus the F(g) prefix
                if (composite.size() > obs[a].path.size()) continue;
                if (!std::equal(composite.begin(), composite.end(), obs[a].path.begin()))
                    continue;
                std::vector<int> rest(obs[a].path.begin() + composite.size(),
                                      obs[a].path.end());
                for (size_t b = 0; b < obs.size(); ++b) {
                    if (obs[b].j != j2 || obs[b].path != rest) continue;
                    for (int e = 0; e < x.sets[obs[a].j]; ++e) {
                        int u = offset[a] + e;
                        int v = offset[b] + x.maps[g][e];
                        int ru = find(u), rv = find(v);
                        if (ru != rv) parent[std::max(ru, rv)] = std::min(ru, rv);
                    }
                }
            }
        }
        int classes = 0;
        for (int k = 0; k < total; ++k)
            if (find(k) == k) ++classes;
        sizes.push_back(classes);
    }
    return sizes;
}

std::vector<int> fiber_product_sizes(const CSetMorphism& f, const CSetMorphism& g) {
    std::vector<int> sizes;
    for (size_t c = 0; c < f.dom.schema->objects.size(); ++c) {
        int count = 0;
        for (int a = 0; a < f.dom.parts[c]; ++a)
            for (int b = 0; b < g.dom.parts[c]; ++b)
                if (f.components[c][a] == g.components[c][b]) ++count;
        sizes.push_back(count);
    }
    return sizes;
}

} // namespace oracles

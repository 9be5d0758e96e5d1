#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "modelspace/errors.hpp"

namespace modelspace {

/// A path in a presented category: a composable sequence of generator
/// indices, written in diagrammatic order (gens[0] is applied first).
/// Identities are implicit: an empty path is the identity at object `at`.
/// For nonempty paths `at` is ignored and endpoints come from the generators.
struct Path {
    std::vector<int> gens;
    int at = -1;

    bool empty() const { return gens.empty(); }
    bool operator==(const Path& o) const = default;
};

inline Path identity_path(int obj) { return Path{{}, obj}; }
inline Path single(int gen) { return Path{{gen}, -1}; }

struct Generator {
    std::string name;
    int src = -1;
    int tgt = -1;
    bool operator==(const Generator& o) const = default;
};

/// A category presented by a finite reflexive graph plus path equations.
/// Objects and generators are referenced by index; names are unique per kind.
struct FinCatPresentation {
    std::vector<std::string> objects;
    std::vector<Generator> generators;
    std::vector<std::pair<Path, Path>> equations;

    int object_index(const std::string& name) const;
    int generator_index(const std::string& name) const;
    bool is_free() const { return equations.empty(); }

    bool operator==(const FinCatPresentation& o) const = default;
};

using FinCatPtr = std::shared_ptr<const FinCatPresentation>;

FinCatPtr make_fincat(FinCatPresentation p);

/// Throws MalformedInput unless indices, composability and name uniqueness hold.
void validate_presentation(const FinCatPresentation& p);

bool path_composable(const FinCatPresentation& p, const Path& path);
int path_src(const FinCatPresentation& p, const Path& path);
int path_tgt(const FinCatPresentation& p, const Path& path);
Path concat(const Path& a, const Path& b);

enum class Tri { equal, distinct, unknown };

/// Decides equality of two parallel paths under the equation congruence by
/// bidirectional rewrite search, spending at most `budget` node expansions.
/// In a free presentation this is syntactic comparison and never `unknown`.
Tri path_equal(const FinCatPresentation& p, const Path& lhs, const Path& rhs,
               int budget = 10000);

/// A functor between presented categories, given on generators. Equation
/// preservation is semidecidable, so the check result is carried as a flag.
enum class EqCheck { verified, unverified };

struct FinFunctor {
    FinCatPtr dom;
    FinCatPtr cod;
    std::vector<int> object_map;
    std::vector<Path> generator_map;
    EqCheck validity = EqCheck::verified;
};

/// Structural validation: endpoints of generator images must match.
/// Does not decide equation preservation; see verify_functor.
void check_functor_structure(const FinFunctor& f);

/// Checks that every dom equation maps to equal paths in cod. `distinct`
/// means provably not a functor; the result is recorded on the flag by
/// callers who accept unverified functors.
Tri verify_functor(const FinFunctor& f, int budget = 10000);

Path map_path(const FinFunctor& f, const Path& p);
FinFunctor identity_functor(const FinCatPtr& c);
FinFunctor compose(const FinFunctor& f, const FinFunctor& g);
bool functors_equal_on_generators(const FinFunctor& f, const FinFunctor& g,
                                  int budget = 10000);

// ---------------------------------------------------------------------------
// Finite (co)limits of presentations
// ---------------------------------------------------------------------------

struct FinCatProduct {
    FinCatPtr apex;
    std::vector<FinFunctor> projections;
    // apex object index -> factor object indices
    std::vector<std::vector<int>> object_tuple;
    // apex generator index -> (factor owning the moving generator,
    //                          generator index in that factor,
    //                          object index per factor at the source)
    struct GenOrigin {
        int factor;
        int gen;
        std::vector<int> objects;
    };
    std::vector<GenOrigin> gen_origin;

    int object_of(const std::vector<int>& tuple) const;
    int generator_of(int factor, int gen, const std::vector<int>& objects) const;
};

/// Objects are tuples, generators move a single coordinate, equations are the
/// lifted factor equations plus all interchange squares.
FinCatProduct product(const std::vector<FinCatPtr>& factors);

/// Functor between product presentations induced by per-factor functors.
FinFunctor product_functor(const std::vector<FinFunctor>& fs,
                           const FinCatProduct& dom, const FinCatProduct& cod);

struct FinCatEqualizer {
    FinCatPtr sub;
    FinFunctor inclusion;
    std::vector<int> object_sel; // sub object -> dom object
    std::vector<int> gen_sel;    // sub generator -> dom generator
};

/// Agreement subgraph of the shared domain. The shared codomain must be free.
FinCatEqualizer equalizer(const std::vector<FinFunctor>& fs);

struct FinCatCoproduct {
    FinCatPtr apex;
    std::vector<FinFunctor> inclusions;
    std::vector<int> object_offset; // per summand
    std::vector<int> gen_offset;
};

FinCatCoproduct coproduct(const std::vector<FinCatPtr>& summands);

struct FinCatCoequalizer {
    FinCatPtr apex;
    FinFunctor proj;                 // cod -> apex
    std::vector<int> object_class;   // cod object -> apex object
};

/// Quotients the shared codomain's objects by the images of each dom object
/// and imposes F_i(g) = F_j(g) for every dom generator.
FinCatCoequalizer coequalizer(const std::vector<FinFunctor>& fs);

struct FinCatPushout {
    FinCatPtr apex;
    FinFunctor left;  // from left cod
    FinFunctor right; // from right cod
};

FinCatPushout pushout(const FinFunctor& f, const FinFunctor& g);

// Common small shapes.
FinCatPtr terminal_shape();
FinCatPtr discrete_shape(int n);
FinCatPtr path_shape(int objects); // 0 -> 1 -> ... -> n-1
FinCatPtr parallel_shape(int arrows);
FinCatPtr cospan_shape(int legs); // leg objects 0..n-1, apex n
FinCatPtr span_shape(int legs);   // apex 0, leg objects 1..n

} // namespace modelspace

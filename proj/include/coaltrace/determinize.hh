// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* determinize.hh -- constructions turning branching machines into
 * deterministic ones.
 *
 * Each construction explores only the part of the lifted state space that is
 * reachable from the images of the original states, in breadth-first order
 * with letters tried in alphabet order, so state numbering is reproducible.
 * The image of original state x is embed[x]; meaning[d] is the value
 * (subset, weight vector, or set of predicates) that machine state d stands
 * for.
 */

#ifndef COALTRACE_DETERMINIZE_HH_
#define COALTRACE_DETERMINIZE_HH_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "coaltrace/automata.hh"
#include "coaltrace/errors.hh"
#include "coaltrace/semantics.hh"
#include "coaltrace/weights.hh"

namespace coaltrace {

template <class Meaning, Semiring S = BooleanSemiring>
struct DetResult {
    MooreAut<S> machine;
    std::vector<StateId> embed;
    std::vector<Meaning> meaning;
};

/// A set of predicates on a base set of `base` states. Predicate p is the
/// subset of states whose bits are set in the integer p; the set itself is a
/// StateSet over the 2^base predicates.
struct PredicateSet {
    std::size_t base = 0;
    StateSet predicates;

    bool contains(const StateSet& phi) const { return predicates.contains(static_cast<StateId>(phi.mask())); }
    friend bool operator==(const PredicateSet&, const PredicateSet&) = default;
    friend bool operator<(const PredicateSet& a, const PredicateSet& b) { return a.predicates < b.predicates; }
};

using SubsetResult = DetResult<StateSet>;
template <Semiring S>
using WeightedResult = DetResult<WeightVec<S>, S>;
using CanonicalResult = DetResult<PredicateSet>;

/// Nondeterministic result of translating an alternating automaton.
struct AltNfaResult {
    Nfa nfa;
    std::vector<StateId> embed;
    std::vector<StateSet> meaning;
};

inline constexpr std::size_t kDefaultWeightedBudget = 10'000;
inline constexpr std::size_t kDefaultCanonicalBound = 4;

/// One step of the determinized machine: mu(M(trans(-)(a))(v)).
template <Semiring S>
WeightVec<S> weighted_successor(const WeightedAut<S>& w, const WeightVec<S>& v, Label a) {
    return monad_mul(map_weights(v, [&](const StateId& y) { return w.trans[y][a]; }));
}

/// Output of a weight vector: sum of v(y) * out(y).
template <Semiring S>
typename S::value_type weighted_output(const WeightedAut<S>& w, const WeightVec<S>& v) {
    auto out = S::zero();
    for (const auto& [y, weight] : v) { out = S::add(out, S::mul(weight, w.out[y])); }
    return out;
}

/// States are weight vectors reachable from the unit vectors.
/// output(v) = sum v(y) * out(y); delta(v)(a) = mu(M(trans(-)(a))(v)).
/// Throws BudgetExceeded once more than `budget` states are discovered.
template <Semiring S>
WeightedResult<S> det_weighted(const WeightedAut<S>& w, std::size_t budget = kDefaultWeightedBudget);

/// Subset construction from singletons. Output of S: S meets the accepting
/// states (Disjunctive) or S lies within them (Conjunctive).
SubsetResult det_subset(const Nfa& n, Branching mode);

/// { V within the union of S | V meets every member of S }.
Family chi_good(const Family& s, std::size_t universe);

/// Images of all choice functions on S. Not natural; kept as a negative control.
Family chi_wrong(const Family& s, std::size_t universe);

/// Translation along B chi after the conjunctive distribution of subsets:
/// S is accepting iff every member is, and S -a-> U V for every V chosen by
/// chi_good from the family { trans(y)(a) | y in S }.
AltNfaResult alt_to_nfa(const AlternatingAut& a, std::size_t budget = kDefaultWeightedBudget);

/// Determinization into sets of predicates on the states, starting from
/// iota(x) = { phi | x in phi }. Throws BudgetExceeded if the automaton has
/// more than `bound` states.
CanonicalResult canonical_det_nfa(const Nfa& n, std::size_t bound = kDefaultCanonicalBound);

/// "{q0,q1}" using the state names.
std::string render_set(const StateSet& s, const std::vector<std::string>& names);
/// "{q0:2,q1:1/3}" using the state names.
template <Semiring S>
std::string render_vector(const WeightVec<S>& v, const std::vector<std::string>& names);
/// "{{},{q0},{q0,q1}}": each predicate rendered as the set it holds of.
std::string render_predicates(const PredicateSet& p, const std::vector<std::string>& names);

namespace detail {

template <class Meaning>
struct Exploration {
    std::vector<Meaning> meaning;
    std::vector<std::vector<StateId>> delta;
    std::vector<StateId> seeds;
};

/// Breadth-first closure of `seeds` under step(meaning, letter).
template <class Meaning, class Step>
Exploration<Meaning> explore(const std::vector<Meaning>& seeds, std::size_t letters, Step&& step,
                             std::size_t budget, const char* what) {
    Exploration<Meaning> e;
    std::map<Meaning, StateId> ids;
    auto intern = [&](const Meaning& m) {
        auto [it, fresh] = ids.emplace(m, static_cast<StateId>(e.meaning.size()));
        if (fresh) {
            if (e.meaning.size() >= budget) {
                throw BudgetExceeded(std::string(what) + ": more than " + std::to_string(budget) + " states",
                                     budget);
            }
            e.meaning.push_back(m);
        }
        return it->second;
    };
    for (const auto& s : seeds) { e.seeds.push_back(intern(s)); }
    for (std::size_t d = 0; d < e.meaning.size(); ++d) {
        std::vector<StateId> row(letters);
        for (Label a = 0; a < letters; ++a) {
            Meaning next = step(e.meaning[d], a);
            row[a] = intern(next);
        }
        e.delta.push_back(std::move(row));
    }
    return e;
}

} // namespace detail

template <Semiring S>
std::string render_vector(const WeightVec<S>& v, const std::vector<std::string>& names) {
    std::string out = "{";
    bool first = true;
    for (const auto& [x, w] : v) {
        if (!first) { out += ","; }
        first = false;
        out += (x < names.size() ? names[x] : std::to_string(x)) + ":" + S::to_string(w);
    }
    return out + "}";
}

template <Semiring S>
WeightedResult<S> det_weighted(const WeightedAut<S>& w, std::size_t budget) {
    using Vec = WeightVec<S>;
    const std::size_t n = w.num_states();
    std::vector<Vec> seeds;
    for (StateId x = 0; x < n; ++x) { seeds.push_back(Vec::unit(x)); }
    auto step = [&](const Vec& v, Label a) { return weighted_successor(w, v, a); };
    auto e = detail::explore<Vec>(seeds, w.alphabet.size(), step, budget, "weighted determinization");
    WeightedResult<S> r;
    r.machine.alphabet = w.alphabet;
    for (const auto& v : e.meaning) {
        r.machine.output.push_back(weighted_output(w, v));
        r.machine.states.push_back(render_vector(v, w.states));
    }
    r.machine.delta = std::move(e.delta);
    r.embed = std::move(e.seeds);
    r.meaning = std::move(e.meaning);
    return r;
}

} // namespace coaltrace

#endif // COALTRACE_DETERMINIZE_HH_

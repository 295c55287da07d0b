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

/* automata.hh -- finite coalgebras of every kind handled by the library.
 *
 * None of the structures carries an initial state; every query names the
 * states it is about. States and letters are interned as small integers
 * indexing the `states` and `alphabet` name tables.
 *
 * The structures are plain aggregates so that malformed data can be
 * represented and reported by validate() instead of being rejected on
 * construction.
 */

#ifndef COALTRACE_AUTOMATA_HH_
#define COALTRACE_AUTOMATA_HH_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coaltrace/state_set.hh"
#include "coaltrace/weights.hh"

namespace coaltrace {

using Word = std::vector<Label>;
using IdSet = std::set<StateId>;
using IdFamily = std::set<IdSet>;

struct Transition {
    StateId from;
    Label label;
    StateId to;
    auto operator<=>(const Transition&) const = default;
};

/// Successor sets indexed [state][label].
using SuccessorTable = std::vector<std::vector<StateSet>>;

/// Nondeterministic automaton X -> P(A x X + 1): edges plus accepting states.
/// Reading it as X -> 2 x (P X)^A gives the same data.
struct Nfa {
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    std::set<Transition> transitions;
    IdSet accepting;

    std::size_t num_states() const { return states.size(); }
    bool is_accepting(StateId x) const { return accepting.count(x) != 0; }
    SuccessorTable successor_table() const;
};

/// Deterministic machine X -> S x X^A; Boolean outputs make it a DFA.
template <Semiring S>
struct MooreAut {
    using value_type = typename S::value_type;
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    std::vector<value_type> output;
    /// delta[state][label]
    std::vector<std::vector<StateId>> delta;

    std::size_t num_states() const { return states.size(); }
};

using Dfa = MooreAut<BooleanSemiring>;

/// Weighted automaton X -> M(A x X + 1), stored as output weight plus a
/// weight vector of successors per letter.
template <Semiring S>
struct WeightedAut {
    using value_type = typename S::value_type;
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    std::vector<value_type> out;
    /// trans[state][label]
    std::vector<std::vector<WeightVec<S>>> trans;

    std::size_t num_states() const { return states.size(); }
};

using OpId = std::uint32_t;

struct Operation {
    std::string name;
    std::uint32_t arity;
    bool operator==(const Operation&) const = default;
};

using Signature = std::vector<Operation>;

/// One layer of a tree over states, sigma(x1, ..., xn).
struct FlatTerm {
    OpId op;
    std::vector<StateId> args;
    auto operator<=>(const FlatTerm&) const = default;
};

/// Top-down weighted tree automaton X -> M Sigma X.
template <Semiring S>
struct WeightedTreeAut {
    using value_type = typename S::value_type;
    std::vector<std::string> states;
    Signature signature;
    std::vector<WeightVec<S, FlatTerm>> trans;

    std::size_t num_states() const { return states.size(); }
};

/// Finite Sigma-tree.
struct Tree {
    OpId op = 0;
    std::vector<Tree> children;

    /// Leaves have height 0.
    std::size_t height() const;
    friend bool operator==(const Tree& a, const Tree& b);
    friend bool operator<(const Tree& a, const Tree& b);
};

Tree leaf(OpId op);
Tree node(OpId op, std::vector<Tree> children);
std::string render_tree(const Tree& t, const Signature& sig);

/// Alternating automaton X -> 2 x (P P X)^A: the outer set is a
/// disjunction, each inner set a conjunction.
struct AlternatingAut {
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    std::vector<bool> output;
    /// trans[state][label]
    std::vector<std::vector<IdFamily>> trans;

    std::size_t num_states() const { return states.size(); }
    Family family(StateId x, Label a) const;
};

/// Labelled transition system X -> (P X)^A, all traces finite.
struct Lts {
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    std::set<Transition> transitions;

    std::size_t num_states() const { return states.size(); }
    SuccessorTable successor_table() const;
};

/// nullopt is termination; otherwise (label, successor).
using GpsOutcome = std::optional<std::pair<Label, StateId>>;

/// Generative probabilistic system X -> Dist(A x X + 1).
struct Gps {
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    std::vector<std::map<GpsOutcome, PartialProb>> dist;

    std::size_t num_states() const { return states.size(); }
};

std::vector<std::string> validate(const Nfa& n);
std::vector<std::string> validate(const AlternatingAut& a);
std::vector<std::string> validate(const Lts& l);
std::vector<std::string> validate(const Gps& g);
template <Semiring S> std::vector<std::string> validate(const MooreAut<S>& m);
template <Semiring S> std::vector<std::string> validate(const WeightedAut<S>& w);
template <Semiring S> std::vector<std::string> validate(const WeightedTreeAut<S>& w);
/// Arity check of a tree against a signature.
std::vector<std::string> validate(const Tree& t, const Signature& sig);

/// Reversed NFA together with its initial states (the old accepting ones).
struct ReversedNfa {
    Nfa nfa;
    IdSet initial;
};

/// Flip every edge; accepting := initial, initial := old accepting.
ReversedNfa reverse_nfa(const Nfa& n, const IdSet& initial);

/// Index of a name in a table, if present.
std::optional<StateId> find_name(const std::vector<std::string>& names, const std::string& name);

/// Labels joined without separator when all are single characters, with
/// "·" otherwise, unless an explicit separator is given; the empty word is "ε".
std::string render_word(const Word& w, const std::vector<std::string>& alphabet,
                        const std::optional<std::string>& separator = std::nullopt);

/// Default names "0", "1", ... for n states.
std::vector<std::string> numbered_names(std::size_t n, const std::string& prefix = "");

} // namespace coaltrace

#include "coaltrace/automata_impl.hh"

#endif // COALTRACE_AUTOMATA_HH_

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

/* minimize.hh -- double-reversal construction of observable and minimal
 * deterministic automata, with an independent refinement minimizer and an
 * exact equivalence check.
 */

#ifndef COALTRACE_MINIMIZE_HH_
#define COALTRACE_MINIMIZE_HH_

#include <map>
#include <optional>
#include <vector>

#include "coaltrace/automata.hh"

namespace coaltrace {

/// A word accepted from exactly one of two states.
struct Certificate {
    StateId first;
    StateId second;
    Word word;
};

/// A DFA whose states have pairwise distinct languages.
struct ObservableDfa {
    Dfa dfa;
    StateId initial = 0;
    /// One entry per unordered pair of distinct states, first < second.
    std::vector<Certificate> certificates;
    /// Original NFA state -> DFA state with the same language, where present.
    std::map<StateId, StateId> embed;
    /// Each DFA state as a set of states of the intermediate reversed
    /// determinization, each of those a set of original states.
    std::vector<Family> meaning;
};

/**
 * Reverse, determinize from the accepting set, keep the reachable part R,
 * reverse R and determinize again. The result contains the image of every
 * original state x (the R-states holding x) and the image of `initial`, plus
 * everything reachable from them.
 */
ObservableDfa brzozowski_observable(const Nfa& n, const IdSet& initial);

/// brzozowski_observable restricted to the part reachable from the initial state.
ObservableDfa brzozowski_minimal(const Nfa& n, const IdSet& initial);

struct MinimalDfa {
    Dfa dfa;
    StateId initial = 0;
    /// Block of each state of the input reachable from the initial state.
    std::map<StateId, StateId> block;
};

/// Moore-style refinement of the part reachable from `initial`.
MinimalDfa partition_refine(const Dfa& d, StateId initial);

struct EquivResult {
    bool equivalent = true;
    /// Shortest, then least in letter order, word with different outputs.
    std::optional<Word> counterexample;
};

/// Both machines must share the alphabet (by position).
EquivResult dfa_equiv(const Dfa& d1, const Dfa& d2, StateId init1, StateId init2);

/// Pairwise shortest distinguishing words; nullopt for pairs with equal languages.
std::vector<std::vector<std::optional<Word>>> distinguishing_words(const Dfa& d);

/// Outputs along a word from a state.
bool dfa_accepts(const Dfa& d, StateId from, const Word& w);

/// Every certificate word separates its pair.
bool verify_certificates(const ObservableDfa& o);

} // namespace coaltrace

#endif // COALTRACE_MINIMIZE_HH_

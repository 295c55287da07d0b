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

/* io.hh -- the JSON automaton file format.
 *
 * A file is one JSON object with a "kind" discriminator. States, labels and
 * operations are referred to by name; weights are JSON booleans ("bool"),
 * decimal strings ("nat") or "num/den" strings ("rat"). Serialization is
 * canonical: name tables keep their declaration order and every list of
 * entries is sorted by interned ids, so parse and serialize round-trip.
 */

#ifndef COALTRACE_IO_HH_
#define COALTRACE_IO_HH_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "coaltrace/automata.hh"
#include "coaltrace/errors.hh"

namespace coaltrace {

using AnyAutomaton =
    std::variant<Nfa, MooreAut<BooleanSemiring>, MooreAut<NaturalSemiring>, MooreAut<RationalSemiring>,
                 WeightedAut<BooleanSemiring>, WeightedAut<NaturalSemiring>, WeightedAut<RationalSemiring>,
                 WeightedTreeAut<BooleanSemiring>, WeightedTreeAut<NaturalSemiring>,
                 WeightedTreeAut<RationalSemiring>, AlternatingAut, Lts, Gps>;

struct AutomatonFile {
    AnyAutomaton automaton;
    /// Optional designated initial states.
    std::optional<IdSet> initial;
};

/// "nfa", "moore", "weighted", "wta", "alternating", "lts" or "gps".
std::string kind_name(const AnyAutomaton& a);
/// "bool", "nat" or "rat" for semiring-tagged kinds, empty otherwise.
std::string semiring_name(const AnyAutomaton& a);
const std::vector<std::string>& state_names(const AnyAutomaton& a);

/// Throws ParseError on malformed JSON or shape, ValidationError when the
/// data names unknown entities or fails validate().
AutomatonFile parse_automaton(std::string_view text);
/// Reads and parses a file; an unreadable file is a ParseError.
AutomatonFile read_automaton_file(const std::string& path);

/// Canonical pretty-printed JSON, newline-terminated.
std::string serialize_automaton(const AutomatonFile& file);
std::string serialize_automaton(const AnyAutomaton& a);

/// Weight encodings used by the file format.
template <Semiring S>
std::string weight_text(const typename S::value_type& v);

} // namespace coaltrace

#endif // COALTRACE_IO_HH_

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

// Template members of automata.hh.

#ifndef COALTRACE_AUTOMATA_IMPL_HH_
#define COALTRACE_AUTOMATA_IMPL_HH_

#include <string>
#include <vector>

namespace coaltrace {

template <Semiring S>
std::vector<std::string> validate(const MooreAut<S>& m) {
    std::vector<std::string> v;
    const std::size_t n = m.num_states();
    if (m.output.size() != n) {
        v.push_back("output has " + std::to_string(m.output.size()) + " entries for " + std::to_string(n) + " states");
    }
    if (m.delta.size() != n) {
        v.push_back("delta has " + std::to_string(m.delta.size()) + " rows for " + std::to_string(n) + " states");
    }
    for (std::size_t x = 0; x < m.delta.size(); ++x) {
        if (m.delta[x].size() != m.alphabet.size()) {
            v.push_back("delta of state " + std::to_string(x) + " is not total on the alphabet");
            continue;
        }
        for (std::size_t a = 0; a < m.delta[x].size(); ++a) {
            if (m.delta[x][a] >= n) {
                v.push_back("delta(" + std::to_string(x) + ", " + std::to_string(a) + ") = " +
                            std::to_string(m.delta[x][a]) + " is not a state");
            }
        }
    }
    return v;
}

template <Semiring S>
std::vector<std::string> validate(const WeightedAut<S>& w) {
    std::vector<std::string> v;
    const std::size_t n = w.num_states();
    if (w.out.size() != n) {
        v.push_back("out has " + std::to_string(w.out.size()) + " entries for " + std::to_string(n) + " states");
    }
    if (w.trans.size() != n) {
        v.push_back("trans has " + std::to_string(w.trans.size()) + " rows for " + std::to_string(n) + " states");
    }
    for (std::size_t x = 0; x < w.trans.size(); ++x) {
        if (w.trans[x].size() != w.alphabet.size()) {
            v.push_back("trans of state " + std::to_string(x) + " does not cover the alphabet");
            continue;
        }
        for (std::size_t a = 0; a < w.trans[x].size(); ++a) {
            for (const auto& [y, _] : w.trans[x][a]) {
                if (y >= n) {
                    v.push_back("weight (" + std::to_string(x) + ", " + std::to_string(a) + ", " +
                                std::to_string(y) + ") targets an unknown state");
                }
            }
        }
    }
    return v;
}

template <Semiring S>
std::vector<std::string> validate(const WeightedTreeAut<S>& w) {
    std::vector<std::string> v;
    const std::size_t n = w.num_states();
    if (w.trans.size() != n) {
        v.push_back("trans has " + std::to_string(w.trans.size()) + " rows for " + std::to_string(n) + " states");
    }
    for (std::size_t x = 0; x < w.trans.size(); ++x) {
        for (const auto& [term, _] : w.trans[x]) {
            if (term.op >= w.signature.size()) {
                v.push_back("state " + std::to_string(x) + " uses unknown operation " + std::to_string(term.op));
                continue;
            }
            const auto& op = w.signature[term.op];
            if (term.args.size() != op.arity) {
                v.push_back("state " + std::to_string(x) + ": " + op.name + " applied to " +
                            std::to_string(term.args.size()) + " arguments, arity " + std::to_string(op.arity));
            }
            for (StateId y : term.args) {
                if (y >= n) {
                    v.push_back("state " + std::to_string(x) + ": " + op.name + " refers to unknown state " +
                                std::to_string(y));
                }
            }
        }
    }
    return v;
}

} // namespace coaltrace

#endif // COALTRACE_AUTOMATA_IMPL_HH_

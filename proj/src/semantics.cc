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

#include "coaltrace/semantics.hh"

#include <set>

namespace coaltrace {

using detail::layered;
using detail::require_state;

std::vector<LanguageTable<bool>> nfa_trace_all(const Nfa& n, std::size_t depth) {
    const auto succ = n.successor_table();
    return layered<bool>(
        n.num_states(), n.alphabet.size(), depth, [&](StateId x) { return n.is_accepting(x); },
        [&](StateId x, Label a, const auto& prev) {
            for (StateId y : succ[x][a].members()) {
                if (prev(y)) { return true; }
            }
            return false;
        });
}

LanguageTable<bool> nfa_trace(const Nfa& n, StateId x, std::size_t depth) {
    require_state(n.num_states(), x);
    return nfa_trace_all(n, depth)[x];
}

std::vector<std::vector<bool>> length_semantics_all(const Nfa& n, std::size_t depth) {
    const std::size_t size = n.num_states();
    std::vector<std::vector<bool>> out(size, std::vector<bool>(depth + 1, false));
    for (StateId x = 0; x < size; ++x) { out[x][0] = n.is_accepting(x); }
    for (std::size_t k = 1; k <= depth; ++k) {
        for (const auto& t : n.transitions) {
            if (out[t.to][k - 1]) { out[t.from][k] = true; }
        }
    }
    return out;
}

std::vector<bool> length_semantics(const Nfa& n, StateId x, std::size_t depth) {
    require_state(n.num_states(), x);
    return length_semantics_all(n, depth)[x];
}

std::vector<LanguageTable<bool>> lts_traces_all(const Lts& l, std::size_t depth) {
    const auto succ = l.successor_table();
    return layered<bool>(
        l.num_states(), l.alphabet.size(), depth, [](StateId) { return true; },
        [&](StateId x, Label a, const auto& prev) {
            for (StateId y : succ[x][a].members()) {
                if (prev(y)) { return true; }
            }
            return false;
        });
}

LanguageTable<bool> lts_traces(const Lts& l, StateId x, std::size_t depth) {
    require_state(l.num_states(), x);
    return lts_traces_all(l, depth)[x];
}

std::vector<LanguageTable<bool>> bt_nfa_trace_all(const Nfa& n, std::size_t depth, Branching mode) {
    const auto succ = n.successor_table();
    const bool conj = mode == Branching::Conjunctive;
    return layered<bool>(
        n.num_states(), n.alphabet.size(), depth, [&](StateId x) { return n.is_accepting(x); },
        [&](StateId x, Label a, const auto& prev) {
            for (StateId y : succ[x][a].members()) {
                if (prev(y) != conj) { return !conj; }
            }
            return conj;
        });
}

LanguageTable<bool> bt_nfa_trace(const Nfa& n, StateId x, std::size_t depth, Branching mode) {
    require_state(n.num_states(), x);
    return bt_nfa_trace_all(n, depth, mode)[x];
}

std::vector<LanguageTable<bool>> alt_trace_all(const AlternatingAut& aut, std::size_t depth) {
    return layered<bool>(
        aut.num_states(), aut.alphabet.size(), depth, [&](StateId x) { return bool(aut.output[x]); },
        [&](StateId x, Label a, const auto& prev) {
            for (const auto& clause : aut.trans[x][a]) {
                bool all = true;
                for (StateId y : clause) {
                    if (!prev(y)) {
                        all = false;
                        break;
                    }
                }
                if (all) { return true; }
            }
            return false;
        });
}

LanguageTable<bool> alt_trace(const AlternatingAut& aut, StateId x, std::size_t depth) {
    require_state(aut.num_states(), x);
    return alt_trace_all(aut, depth)[x];
}

std::vector<TraceDist> gps_trace_all(const Gps& g, std::size_t depth) {
    return layered<PartialProb>(
        g.num_states(), g.alphabet.size(), depth,
        [&](StateId x) {
            auto it = g.dist[x].find(std::nullopt);
            return it == g.dist[x].end() ? PartialProb::zero() : it->second;
        },
        [&](StateId x, Label a, const auto& prev) {
            PartialProb sum;
            auto it = g.dist[x].lower_bound(GpsOutcome(std::pair<Label, StateId>(a, 0)));
            for (; it != g.dist[x].end() && it->first && it->first->first == a; ++it) {
                auto next = prob_add(sum, prob_mul(it->second, prev(it->first->second)));
                if (!next) { throw std::domain_error("trace probabilities exceed one; the system is not a distribution"); }
                sum = *next;
            }
            return sum;
        });
}

TraceDist gps_trace(const Gps& g, StateId x, std::size_t depth) {
    require_state(g.num_states(), x);
    return gps_trace_all(g, depth)[x];
}

std::optional<PartialProb> trace_mass(const TraceDist& d, const std::vector<Word>& words) {
    std::set<Word> distinct(words.begin(), words.end());
    PartialProb sum;
    for (const auto& w : distinct) {
        auto next = prob_add(sum, d.at(w));
        if (!next) { return std::nullopt; }
        sum = *next;
    }
    return sum;
}

std::optional<PartialProb> total_mass(const TraceDist& d, std::size_t up_to) {
    PartialProb sum;
    for (std::size_t k = 0; k <= std::min(up_to, d.depth()); ++k) {
        for (const auto& p : d.layer(k)) {
            auto next = prob_add(sum, p);
            if (!next) { return std::nullopt; }
            sum = *next;
        }
    }
    return sum;
}

std::shared_ptr<const TreeEnumeration> enumerate_trees(const Signature& sig, std::size_t depth, std::size_t limit) {
    auto e = std::make_shared<TreeEnumeration>();
    e->depth = depth;
    e->signature = sig;
    auto add = [&](OpId op, std::vector<std::size_t> children) {
        if (e->nodes.size() >= limit) { throw std::length_error("tree enumeration exceeds its limit"); }
        Tree t{op, {}};
        for (std::size_t c : children) { t.children.push_back(e->trees[c]); }
        e->index.emplace(t, e->nodes.size());
        e->trees.push_back(std::move(t));
        e->nodes.push_back(TreeEnumeration::Node{op, std::move(children)});
    };
    for (OpId op = 0; op < sig.size(); ++op) {
        if (sig[op].arity == 0) { add(op, {}); }
    }
    // Trees of height h have all children below h and at least one child at h-1.
    std::size_t below = 0;
    std::size_t upto = e->nodes.size();
    for (std::size_t h = 1; h <= depth; ++h) {
        for (OpId op = 0; op < sig.size(); ++op) {
            const std::size_t arity = sig[op].arity;
            if (arity == 0 || upto == 0) { continue; }
            std::vector<std::size_t> tuple(arity, 0);
            while (true) {
                bool fresh = false;
                for (std::size_t c : tuple) { fresh = fresh || c >= below; }
                if (fresh) { add(op, tuple); }
                std::size_t i = arity;
                while (i > 0 && ++tuple[i - 1] == upto) { tuple[--i] = 0; }
                if (i == 0) { break; }
            }
        }
        below = upto;
        upto = e->nodes.size();
    }
    return e;
}

} // namespace coaltrace

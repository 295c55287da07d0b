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

#include "coaltrace/minimize.hh"

#include <algorithm>
#include <deque>
#include <tuple>
#include <stdexcept>

#include "coaltrace/determinize.hh"

namespace coaltrace {

namespace {

std::vector<StateId> reachable_from(const Dfa& d, StateId start) {
    std::vector<bool> seen(d.num_states(), false);
    std::vector<StateId> order{start};
    seen[start] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (StateId t : d.delta[order[i]]) {
            if (!seen[t]) {
                seen[t] = true;
                order.push_back(t);
            }
        }
    }
    return order;
}

/// Subset construction of an NFA from explicit seed sets.
template <class Seeds>
detail::Exploration<StateSet> determinize_from(const Nfa& n, const Seeds& seeds) {
    const auto succ = n.successor_table();
    auto step = [&](const StateSet& s, Label a) {
        StateSet next(n.num_states());
        for (StateId x : s.members()) { next |= succ[x][a]; }
        return next;
    };
    return detail::explore<StateSet>(seeds, n.alphabet.size(), step, std::size_t(-1), "subset construction");
}

} // namespace

bool dfa_accepts(const Dfa& d, StateId from, const Word& w) {
    StateId s = from;
    for (Label a : w) { s = d.delta[s][a]; }
    return d.output[s];
}

std::vector<std::vector<std::optional<Word>>> distinguishing_words(const Dfa& d) {
    const std::size_t n = d.num_states();
    std::vector<std::vector<std::optional<Word>>> words(n, std::vector<std::optional<Word>>(n));
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (d.output[p] != d.output[q]) { words[p][q] = Word{}; }
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::tuple<std::size_t, std::size_t, Word>> found;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                if (words[p][q]) { continue; }
                for (Label a = 0; a < d.alphabet.size(); ++a) {
                    const auto& next = words[d.delta[p][a]][d.delta[q][a]];
                    if (next) {
                        Word w{a};
                        w.insert(w.end(), next->begin(), next->end());
                        found.emplace_back(p, q, std::move(w));
                        break;
                    }
                }
            }
        }
        for (auto& [p, q, w] : found) {
            words[p][q] = std::move(w);
            changed = true;
        }
    }
    return words;
}

ObservableDfa brzozowski_observable(const Nfa& n, const IdSet& initial) {
    const std::size_t size = n.num_states();
    for (StateId x : initial) {
        if (x >= size) { throw UnknownState("initial state #" + std::to_string(x) + " is not a state"); }
    }

    // Reverse and determinize from the old accepting states.
    const ReversedNfa rev = reverse_nfa(n, initial);
    const auto reach = determinize_from(rev.nfa, std::vector<StateSet>{StateSet::of(size, rev.initial)});
    const std::size_t m = reach.meaning.size();

    // The reachable part as an NFA, reversed again with its start as the
    // only accepting state.
    Nfa reach_nfa;
    reach_nfa.states = numbered_names(m, "r");
    reach_nfa.alphabet = n.alphabet;
    for (StateId r = 0; r < m; ++r) {
        for (Label a = 0; a < n.alphabet.size(); ++a) { reach_nfa.transitions.insert({r, a, reach.delta[r][a]}); }
    }
    IdSet reach_accepting;
    const StateSet initial_set = StateSet::of(size, initial);
    for (StateId r = 0; r < m; ++r) {
        if (reach.meaning[r].intersects(initial_set)) { reach_accepting.insert(r); }
    }
    const ReversedNfa back = reverse_nfa(reach_nfa, IdSet{reach.seeds.front()});

    // Seeds: the R-states holding x, for each x, then the R-accepting states.
    std::vector<StateSet> seeds;
    for (StateId x = 0; x < size; ++x) {
        StateSet holding(m);
        for (StateId r = 0; r < m; ++r) {
            if (reach.meaning[r].contains(x)) { holding.insert(r); }
        }
        seeds.push_back(std::move(holding));
    }
    seeds.push_back(StateSet::of(m, reach_accepting));
    const auto obs = determinize_from(back.nfa, seeds);

    ObservableDfa o;
    o.dfa.alphabet = n.alphabet;
    const StateSet back_accepting = StateSet::of(m, back.nfa.accepting);
    for (std::size_t d = 0; d < obs.meaning.size(); ++d) {
        o.dfa.output.push_back(obs.meaning[d].intersects(back_accepting));
        o.dfa.states.push_back("m" + std::to_string(d));
        Family f;
        for (StateId r : obs.meaning[d].members()) { f.insert(reach.meaning[r]); }
        o.meaning.push_back(std::move(f));
    }
    o.dfa.delta = obs.delta;
    for (StateId x = 0; x < size; ++x) { o.embed.emplace(x, obs.seeds[x]); }
    o.initial = obs.seeds.back();

    const auto words = distinguishing_words(o.dfa);
    for (StateId p = 0; p < o.dfa.num_states(); ++p) {
        for (StateId q = p + 1; q < o.dfa.num_states(); ++q) {
            if (!words[p][q]) { throw std::logic_error("double reversal produced two equivalent states"); }
            o.certificates.push_back(Certificate{p, q, *words[p][q]});
        }
    }
    return o;
}

ObservableDfa brzozowski_minimal(const Nfa& n, const IdSet& initial) {
    const ObservableDfa full = brzozowski_observable(n, initial);
    const auto order = reachable_from(full.dfa, full.initial);
    std::vector<std::optional<StateId>> renumber(full.dfa.num_states());
    for (std::size_t i = 0; i < order.size(); ++i) { renumber[order[i]] = static_cast<StateId>(i); }

    ObservableDfa o;
    o.dfa.alphabet = full.dfa.alphabet;
    for (StateId old : order) {
        o.dfa.states.push_back("m" + std::to_string(*renumber[old]));
        o.dfa.output.push_back(full.dfa.output[old]);
        std::vector<StateId> row;
        for (StateId t : full.dfa.delta[old]) { row.push_back(*renumber[t]); }
        o.dfa.delta.push_back(std::move(row));
        o.meaning.push_back(full.meaning[old]);
    }
    o.initial = 0;
    for (const auto& [x, d] : full.embed) {
        if (renumber[d]) { o.embed.emplace(x, *renumber[d]); }
    }
    for (const auto& c : full.certificates) {
        if (renumber[c.first] && renumber[c.second]) {
            StateId p = *renumber[c.first];
            StateId q = *renumber[c.second];
            if (p > q) { std::swap(p, q); }
            o.certificates.push_back(Certificate{p, q, c.word});
        }
    }
    std::sort(o.certificates.begin(), o.certificates.end(), [](const Certificate& a, const Certificate& b) {
        return std::pair(a.first, a.second) < std::pair(b.first, b.second);
    });
    return o;
}

MinimalDfa partition_refine(const Dfa& d, StateId initial) {
    if (initial >= d.num_states()) { throw UnknownState("unknown state #" + std::to_string(initial)); }
    const auto order = reachable_from(d, initial);
    const std::size_t letters = d.alphabet.size();

    std::map<StateId, StateId> block;
    {
        std::map<bool, StateId> by_output;
        for (StateId s : order) {
            auto [it, _] = by_output.emplace(bool(d.output[s]), static_cast<StateId>(by_output.size()));
            block[s] = it->second;
        }
    }
    std::size_t blocks = 0;
    while (true) {
        std::map<std::vector<StateId>, StateId> signature_id;
        std::map<StateId, StateId> next;
        for (StateId s : order) {
            std::vector<StateId> sig{block[s]};
            for (Label a = 0; a < letters; ++a) { sig.push_back(block[d.delta[s][a]]); }
            auto [it, _] = signature_id.emplace(std::move(sig), static_cast<StateId>(signature_id.size()));
            next[s] = it->second;
        }
        block = std::move(next);
        if (signature_id.size() == blocks) { break; }
        blocks = signature_id.size();
    }

    MinimalDfa m;
    m.dfa.alphabet = d.alphabet;
    m.dfa.states = numbered_names(blocks, "b");
    m.dfa.output.assign(blocks, false);
    m.dfa.delta.assign(blocks, std::vector<StateId>(letters, 0));
    for (StateId s : order) {
        m.dfa.output[block[s]] = d.output[s];
        for (Label a = 0; a < letters; ++a) { m.dfa.delta[block[s]][a] = block[d.delta[s][a]]; }
    }
    m.initial = block[initial];
    m.block = std::move(block);
    return m;
}

EquivResult dfa_equiv(const Dfa& d1, const Dfa& d2, StateId init1, StateId init2) {
    if (init1 >= d1.num_states()) { throw UnknownState("unknown state #" + std::to_string(init1)); }
    if (init2 >= d2.num_states()) { throw UnknownState("unknown state #" + std::to_string(init2)); }
    if (d1.alphabet.size() != d2.alphabet.size()) {
        throw std::invalid_argument("machines have alphabets of different sizes");
    }
    using Pair = std::pair<StateId, StateId>;
    std::map<Pair, std::pair<Pair, Label>> parent;
    std::deque<Pair> queue{{init1, init2}};
    parent.emplace(Pair{init1, init2}, std::pair{Pair{init1, init2}, Label{0}});
    while (!queue.empty()) {
        Pair p = queue.front();
        queue.pop_front();
        if (d1.output[p.first] != d2.output[p.second]) {
            Word w;
            for (Pair cur = p; cur != Pair{init1, init2};) {
                const auto& [prev, a] = parent.at(cur);
                w.push_back(a);
                cur = prev;
            }
            std::reverse(w.begin(), w.end());
            return EquivResult{false, w};
        }
        for (Label a = 0; a < d1.alphabet.size(); ++a) {
            Pair q{d1.delta[p.first][a], d2.delta[p.second][a]};
            if (parent.emplace(q, std::pair{p, a}).second) { queue.push_back(q); }
        }
    }
    return EquivResult{true, std::nullopt};
}

bool verify_certificates(const ObservableDfa& o) {
    const std::size_t n = o.dfa.num_states();
    if (o.certificates.size() != n * (n - (n > 0 ? 1 : 0)) / 2) { return false; }
    for (const auto& c : o.certificates) {
        if (dfa_accepts(o.dfa, c.first, c.word) == dfa_accepts(o.dfa, c.second, c.word)) { return false; }
    }
    return true;
}

} // namespace coaltrace

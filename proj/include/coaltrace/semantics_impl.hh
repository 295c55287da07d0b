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

// Template members of semantics.hh.

#ifndef COALTRACE_SEMANTICS_IMPL_HH_
#define COALTRACE_SEMANTICS_IMPL_HH_

#include <string>
#include <utility>
#include <vector>

namespace coaltrace {

namespace detail {

inline void require_state(std::size_t num_states, StateId x) {
    if (x >= num_states) { throw UnknownState("unknown state #" + std::to_string(x)); }
}

/**
 * Fill tables for all states layer by layer. eps(x) gives the value on the
 * empty word; step(x, a, prev) the value on a·w, where prev(y) reads the
 * value of y on w from the previous layer.
 */
template <class V, class Eps, class Step>
std::vector<LanguageTable<V>> layered(std::size_t num_states, std::size_t letters, std::size_t depth, Eps&& eps,
                                      Step&& step) {
    std::vector<LanguageTable<V>> tables(num_states, LanguageTable<V>(letters, depth));
    for (std::size_t x = 0; x < num_states; ++x) { tables[x].layer(0)[0] = eps(static_cast<StateId>(x)); }
    std::size_t suffixes = 1;
    for (std::size_t k = 1; k <= depth; ++k) {
        for (std::size_t j = 0; j < suffixes; ++j) {
            auto prev = [&](StateId y) -> V { return tables[y].layer(k - 1)[j]; };
            for (Label a = 0; a < letters; ++a) {
                for (std::size_t x = 0; x < num_states; ++x) {
                    tables[x].layer(k)[a * suffixes + j] = step(static_cast<StateId>(x), a, prev);
                }
            }
        }
        suffixes *= letters;
    }
    return tables;
}

} // namespace detail

template <Semiring S>
std::vector<LanguageTable<typename S::value_type>> moore_trace_all(const MooreAut<S>& m, std::size_t depth) {
    using V = typename S::value_type;
    return detail::layered<V>(
        m.num_states(), m.alphabet.size(), depth, [&](StateId x) { return m.output[x]; },
        [&](StateId x, Label a, const auto& prev) { return prev(m.delta[x][a]); });
}

template <Semiring S>
LanguageTable<typename S::value_type> moore_trace(const MooreAut<S>& m, StateId x, std::size_t depth) {
    detail::require_state(m.num_states(), x);
    return moore_trace_all(m, depth)[x];
}

template <Semiring S>
std::vector<LanguageTable<typename S::value_type>> wa_trace_all(const WeightedAut<S>& w, std::size_t depth) {
    using V = typename S::value_type;
    return detail::layered<V>(
        w.num_states(), w.alphabet.size(), depth, [&](StateId x) { return w.out[x]; },
        [&](StateId x, Label a, const auto& prev) {
            V sum = S::zero();
            for (const auto& [y, weight] : w.trans[x][a]) { sum = S::add(sum, S::mul(weight, prev(y))); }
            return sum;
        });
}

template <Semiring S>
LanguageTable<typename S::value_type> wa_trace(const WeightedAut<S>& w, StateId x, std::size_t depth) {
    detail::require_state(w.num_states(), x);
    return wa_trace_all(w, depth)[x];
}

template <Semiring S>
std::vector<TreeLanguageTable<S>> wta_trace_all(const WeightedTreeAut<S>& w, std::size_t depth) {
    using V = typename S::value_type;
    const std::size_t n = w.num_states();
    auto trees = enumerate_trees(w.signature, depth);
    std::vector<std::vector<V>> values(n, std::vector<V>(trees->nodes.size(), S::zero()));
    for (std::size_t t = 0; t < trees->nodes.size(); ++t) {
        const auto& nd = trees->nodes[t];
        for (std::size_t x = 0; x < n; ++x) {
            V sum = S::zero();
            for (const auto& [term, weight] : w.trans[x]) {
                if (term.op != nd.op) { continue; }
                V prod = weight;
                for (std::size_t i = 0; i < term.args.size() && !is_zero<S>(prod); ++i) {
                    prod = S::mul(prod, values[term.args[i]][nd.children[i]]);
                }
                sum = S::add(sum, prod);
            }
            values[x][t] = std::move(sum);
        }
    }
    std::vector<TreeLanguageTable<S>> out;
    out.reserve(n);
    for (std::size_t x = 0; x < n; ++x) { out.emplace_back(trees, std::move(values[x])); }
    return out;
}

template <Semiring S>
TreeLanguageTable<S> wta_trace(const WeightedTreeAut<S>& w, StateId x, std::size_t depth) {
    detail::require_state(w.num_states(), x);
    return std::move(wta_trace_all(w, depth)[x]);
}

template <Semiring S>
BottomUpAlgebra<S>::BottomUpAlgebra(const WeightedTreeAut<S>& w)
    : num_states_(w.num_states()), signature_(w.signature),
      terms_(w.signature.size(), std::vector<std::vector<std::pair<std::vector<StateId>, value_type>>>(
                                     w.num_states())) {
    for (std::size_t x = 0; x < w.num_states(); ++x) {
        for (const auto& [term, weight] : w.trans[x]) {
            if (term.op >= signature_.size() || term.args.size() != signature_[term.op].arity) {
                throw ArityMismatch("transition term does not match the signature");
            }
            terms_[term.op][x].emplace_back(term.args, weight);
        }
    }
}

template <Semiring S>
typename BottomUpAlgebra<S>::Vector BottomUpAlgebra<S>::apply(OpId op, const std::vector<Vector>& args) const {
    if (op >= signature_.size()) { throw ArityMismatch("unknown operation #" + std::to_string(op)); }
    if (args.size() != signature_[op].arity) {
        throw ArityMismatch(signature_[op].name + " expects " + std::to_string(signature_[op].arity) +
                            " arguments, got " + std::to_string(args.size()));
    }
    for (const auto& a : args) {
        if (a.size() != num_states_) { throw ArityMismatch("argument is not a function on the states"); }
    }
    Vector result(num_states_, S::zero());
    for (std::size_t x = 0; x < num_states_; ++x) {
        for (const auto& [states, weight] : terms_[op][x]) {
            value_type prod = weight;
            for (std::size_t i = 0; i < states.size(); ++i) { prod = S::mul(prod, args[i][states[i]]); }
            result[x] = S::add(result[x], prod);
        }
    }
    return result;
}

template <Semiring S>
typename BottomUpAlgebra<S>::Vector BottomUpAlgebra<S>::fold(const Tree& t) const {
    std::vector<Vector> args;
    args.reserve(t.children.size());
    for (const auto& c : t.children) { args.push_back(fold(c)); }
    return apply(t.op, args);
}

} // namespace coaltrace

#endif // COALTRACE_SEMANTICS_IMPL_HH_

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

/* semantics.hh -- depth-bounded trace semantics.
 *
 * Every semantics here is defined by induction on words (or trees): the value
 * of a state on a·w is determined by the values of its successors on w. The
 * functions compute this recurrence layer by layer, word length 0 first, for
 * all states at once, and stop at a depth bound. Layer k of the result never
 * depends on the bound, so raising the depth only appends layers.
 */

#ifndef COALTRACE_SEMANTICS_HH_
#define COALTRACE_SEMANTICS_HH_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coaltrace/automata.hh"
#include "coaltrace/errors.hh"
#include "coaltrace/weights.hh"

namespace coaltrace {

/// How a set of successors is resolved: "some" or "all".
enum class Branching { Disjunctive, Conjunctive };

/**
 * Values on all words of length <= depth over an alphabet of `letters`
 * symbols. Layer k holds letters^k entries; the word a1..ak sits at index
 * sum a_i * letters^(k-i), so iterating layers in order visits words in
 * length-then-lexicographic order.
 */
template <class V>
class LanguageTable {
public:
    LanguageTable() = default;
    LanguageTable(std::size_t letters, std::size_t depth, const V& fill = V{})
        : letters_(letters) {
        std::size_t width = 1;
        for (std::size_t k = 0; k <= depth; ++k) {
            layers_.emplace_back(width, fill);
            width *= letters;
        }
    }

    std::size_t depth() const { return layers_.empty() ? 0 : layers_.size() - 1; }
    std::size_t letters() const { return letters_; }
    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& l : layers_) { n += l.size(); }
        return n;
    }

    const std::vector<V>& layer(std::size_t k) const { return layers_.at(k); }
    std::vector<V>& layer(std::size_t k) { return layers_.at(k); }

    static std::size_t index_of(const Word& w, std::size_t letters) {
        std::size_t idx = 0;
        for (Label a : w) { idx = idx * letters + a; }
        return idx;
    }
    static Word word_at(std::size_t length, std::size_t index, std::size_t letters) {
        Word w(length);
        for (std::size_t i = length; i-- > 0;) {
            w[i] = static_cast<Label>(index % letters);
            index /= letters;
        }
        return w;
    }

    V at(const Word& w) const {
        if (w.size() > depth()) { throw std::out_of_range("word longer than the table depth"); }
        for (Label a : w) {
            if (a >= letters_) { throw std::out_of_range("label outside the alphabet"); }
        }
        return layers_[w.size()][index_of(w, letters_)];
    }

    /// f(word, value) in length-then-lexicographic order.
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < layers_.size(); ++k) {
            for (std::size_t i = 0; i < layers_[k].size(); ++i) { f(word_at(k, i, letters_), layers_[k][i]); }
        }
    }

    /// The table restricted to words of length <= depth.
    LanguageTable truncated(std::size_t depth) const {
        LanguageTable t;
        t.letters_ = letters_;
        t.layers_.assign(layers_.begin(), layers_.begin() + std::min(layers_.size(), depth + 1));
        return t;
    }

    friend bool operator==(const LanguageTable& a, const LanguageTable& b) {
        return a.letters_ == b.letters_ && a.layers_ == b.layers_;
    }

private:
    std::size_t letters_ = 0;
    std::vector<std::vector<V>> layers_;
};

/// Probabilities of complete traces: the bounded view of a subprobability
/// distribution on words.
using TraceDist = LanguageTable<PartialProb>;

std::vector<LanguageTable<bool>> nfa_trace_all(const Nfa& n, std::size_t depth);
LanguageTable<bool> nfa_trace(const Nfa& n, StateId x, std::size_t depth);

/// entry k is tt iff some word of length k is accepted.
std::vector<std::vector<bool>> length_semantics_all(const Nfa& n, std::size_t depth);
std::vector<bool> length_semantics(const Nfa& n, StateId x, std::size_t depth);

std::vector<LanguageTable<bool>> lts_traces_all(const Lts& l, std::size_t depth);
LanguageTable<bool> lts_traces(const Lts& l, StateId x, std::size_t depth);

/// The NFA read as X -> 2 x (P X)^A with successors resolved by `mode`.
std::vector<LanguageTable<bool>> bt_nfa_trace_all(const Nfa& n, std::size_t depth, Branching mode);
LanguageTable<bool> bt_nfa_trace(const Nfa& n, StateId x, std::size_t depth, Branching mode);

std::vector<LanguageTable<bool>> alt_trace_all(const AlternatingAut& a, std::size_t depth);
LanguageTable<bool> alt_trace(const AlternatingAut& a, StateId x, std::size_t depth);

std::vector<TraceDist> gps_trace_all(const Gps& g, std::size_t depth);
TraceDist gps_trace(const Gps& g, StateId x, std::size_t depth);

/// Probability of a set of traces; nullopt if the partial sum is undefined.
/// Duplicates in `words` are counted once.
std::optional<PartialProb> trace_mass(const TraceDist& d, const std::vector<Word>& words);
/// Mass of all words of length <= up_to.
std::optional<PartialProb> total_mass(const TraceDist& d, std::size_t up_to);

/// Language of a deterministic machine: s(x)(eps) = out(x), s(x)(aw) = s(delta(x,a))(w).
template <Semiring S>
std::vector<LanguageTable<typename S::value_type>> moore_trace_all(const MooreAut<S>& m, std::size_t depth);
template <Semiring S>
LanguageTable<typename S::value_type> moore_trace(const MooreAut<S>& m, StateId x, std::size_t depth);

/// s(x)(eps) = out(x), s(x)(aw) = sum over y of trans(x)(a)(y) * s(y)(w).
template <Semiring S>
std::vector<LanguageTable<typename S::value_type>> wa_trace_all(const WeightedAut<S>& w, std::size_t depth);
template <Semiring S>
LanguageTable<typename S::value_type> wa_trace(const WeightedAut<S>& w, StateId x, std::size_t depth);

/// All arity-correct trees of height <= depth, each stored once. Children of
/// a tree always have smaller indices than the tree itself.
struct TreeEnumeration {
    struct Node {
        OpId op;
        std::vector<std::size_t> children;
    };
    std::size_t depth = 0;
    Signature signature;
    std::vector<Node> nodes;
    std::vector<Tree> trees;
    std::map<Tree, std::size_t> index;
};

/// Throws std::length_error if more than `limit` trees would be produced.
std::shared_ptr<const TreeEnumeration> enumerate_trees(const Signature& sig, std::size_t depth,
                                                       std::size_t limit = 2'000'000);

template <Semiring S>
class TreeLanguageTable {
public:
    using value_type = typename S::value_type;

    TreeLanguageTable(std::shared_ptr<const TreeEnumeration> trees, std::vector<value_type> values)
        : trees_(std::move(trees)), values_(std::move(values)) {}

    std::size_t depth() const { return trees_->depth; }
    const TreeEnumeration& trees() const { return *trees_; }
    const std::vector<value_type>& values() const { return values_; }

    /// Throws ArityMismatch for ill-formed trees, std::out_of_range for
    /// trees taller than the depth.
    value_type at(const Tree& t) const {
        auto problems = validate(t, trees_->signature);
        if (!problems.empty()) { throw ArityMismatch(problems.front()); }
        auto it = trees_->index.find(t);
        if (it == trees_->index.end()) { throw std::out_of_range("tree taller than the table depth"); }
        return values_[it->second];
    }

private:
    std::shared_ptr<const TreeEnumeration> trees_;
    std::vector<value_type> values_;
};

/// s(x)(sigma(t1..tn)) = sum over x1..xn of f(x)(sigma(x1..xn)) * prod s(xi)(ti).
template <Semiring S>
std::vector<TreeLanguageTable<S>> wta_trace_all(const WeightedTreeAut<S>& w, std::size_t depth);
template <Semiring S>
TreeLanguageTable<S> wta_trace(const WeightedTreeAut<S>& w, StateId x, std::size_t depth);

/**
 * The top-down automaton read bottom-up: a deterministic Sigma-algebra on
 * S^X, sigma(phi1..phin)(x) = sum of f(x)(sigma(x1..xn)) * prod phi_i(x_i).
 * Folding a tree through it yields, at coordinate x, the weight of the tree
 * from x.
 */
template <Semiring S>
class BottomUpAlgebra {
public:
    using value_type = typename S::value_type;
    using Vector = std::vector<value_type>;

    explicit BottomUpAlgebra(const WeightedTreeAut<S>& w);

    Vector apply(OpId op, const std::vector<Vector>& args) const;
    Vector fold(const Tree& t) const;

private:
    std::size_t num_states_;
    Signature signature_;
    /// terms_[op][x]: support of f(x) restricted to op.
    std::vector<std::vector<std::vector<std::pair<std::vector<StateId>, value_type>>>> terms_;
};

} // namespace coaltrace

#include "coaltrace/semantics_impl.hh"

#endif // COALTRACE_SEMANTICS_HH_

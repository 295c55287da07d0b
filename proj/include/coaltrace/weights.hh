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

/* weights.hh -- semirings, finitely supported weight vectors and the
 * bounded-addition probability carrier.
 *
 * A weight vector over a semiring S and key type K is a function K -> S with
 * finite support. Vectors are kept canonical: a stored entry is never zero,
 * so structural equality coincides with equality of the functions. This
 * matters wherever vectors themselves become states (weighted
 * determinization) or keys (monad multiplication).
 */

#ifndef COALTRACE_WEIGHTS_HH_
#define COALTRACE_WEIGHTS_HH_

#include <concepts>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coaltrace/state_set.hh"

namespace coaltrace {

using Natural = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <class S>
concept Semiring = requires(const typename S::value_type& a, std::string_view text) {
    { S::zero() } -> std::convertible_to<typename S::value_type>;
    { S::one() } -> std::convertible_to<typename S::value_type>;
    { S::add(a, a) } -> std::convertible_to<typename S::value_type>;
    { S::mul(a, a) } -> std::convertible_to<typename S::value_type>;
    { S::to_string(a) } -> std::convertible_to<std::string>;
    { S::parse(text) } -> std::convertible_to<typename S::value_type>;
    { S::name } -> std::convertible_to<std::string_view>;
};

/// ({ff, tt}, or, and). Weighted constructions over it are the relational ones.
struct BooleanSemiring {
    using value_type = bool;
    static constexpr std::string_view name = "bool";
    static value_type zero() { return false; }
    static value_type one() { return true; }
    static value_type add(value_type a, value_type b) { return a || b; }
    static value_type mul(value_type a, value_type b) { return a && b; }
    static std::string to_string(value_type a) { return a ? "tt" : "ff"; }
    static value_type parse(std::string_view text);
};

/// Arbitrary-precision natural numbers.
struct NaturalSemiring {
    using value_type = Natural;
    static constexpr std::string_view name = "nat";
    static value_type zero() { return 0; }
    static value_type one() { return 1; }
    static value_type add(const value_type& a, const value_type& b) { return a + b; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }
    static std::string to_string(const value_type& a) { return a.str(); }
    static value_type parse(std::string_view text);
};

/// Exact rationals.
struct RationalSemiring {
    using value_type = Rational;
    static constexpr std::string_view name = "rat";
    static value_type zero() { return 0; }
    static value_type one() { return 1; }
    static value_type add(const value_type& a, const value_type& b) { return a + b; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }
    static std::string to_string(const value_type& a) { return a.str(); }
    /// Accepts "n", "n/d" and "-n/d"; the result is reduced.
    static value_type parse(std::string_view text);
};

/// Rational rendered as "num/den", always with an explicit denominator.
std::string rational_fraction(const Rational& q);

template <Semiring S>
bool is_zero(const typename S::value_type& v) {
    return v == S::zero();
}

/**
 * Finitely supported map K -> S. Absent keys read as zero; zero is never stored.
 */
template <Semiring S, class K = StateId>
class WeightVec {
public:
    using value_type = typename S::value_type;
    using key_type = K;
    using Entries = std::map<K, value_type>;

    WeightVec() = default;

    static WeightVec unit(const K& key) {
        WeightVec v;
        v.set(key, S::one());
        return v;
    }

    value_type operator[](const K& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? S::zero() : it->second;
    }

    void set(const K& key, value_type value) {
        if (is_zero<S>(value)) {
            entries_.erase(key);
        } else {
            entries_.insert_or_assign(key, std::move(value));
        }
    }

    /// entry(key) := entry(key) + value
    void add(const K& key, const value_type& value) {
        if (is_zero<S>(value)) { return; }
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            entries_.emplace(key, value);
            return;
        }
        it->second = S::add(it->second, value);
        if (is_zero<S>(it->second)) { entries_.erase(it); }
    }

    const Entries& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t support_size() const { return entries_.size(); }
    std::vector<K> support() const {
        std::vector<K> keys;
        keys.reserve(entries_.size());
        for (const auto& [k, _] : entries_) { keys.push_back(k); }
        return keys;
    }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    friend bool operator==(const WeightVec& a, const WeightVec& b) { return a.entries_ == b.entries_; }
    friend bool operator!=(const WeightVec& a, const WeightVec& b) { return !(a == b); }
    friend bool operator<(const WeightVec& a, const WeightVec& b) { return a.entries_ < b.entries_; }

private:
    Entries entries_;
};

/// Functorial action: result(y) = sum of v(x) over x with f(x) = y.
template <Semiring S, class K, class F>
auto map_weights(const WeightVec<S, K>& v, F&& f) {
    using Target = std::decay_t<std::invoke_result_t<F&, const K&>>;
    WeightVec<S, Target> out;
    for (const auto& [k, w] : v) { out.add(f(k), w); }
    return out;
}

/// Monad multiplication: result(x) = sum over psi of outer(psi) * psi(x).
template <Semiring S, class K>
WeightVec<S, K> monad_mul(const WeightVec<S, WeightVec<S, K>>& outer) {
    WeightVec<S, K> out;
    for (const auto& [psi, coeff] : outer) {
        for (const auto& [x, w] : psi) { out.add(x, S::mul(coeff, w)); }
    }
    return out;
}

/**
 * A probability in [0, 1]. Addition is partial: it is defined only while the
 * sum stays at most one, so the type is deliberately not a semiring.
 */
class PartialProb {
public:
    PartialProb() = default;
    /// Throws std::invalid_argument unless 0 <= value <= 1.
    explicit PartialProb(Rational value);

    static PartialProb zero() { return PartialProb(); }
    static PartialProb one() { return PartialProb(Rational(1)); }

    const Rational& value() const { return value_; }
    bool is_zero() const { return value_ == 0; }
    std::string str() const { return value_.str(); }

    friend bool operator==(const PartialProb& a, const PartialProb& b) { return a.value_ == b.value_; }
    friend bool operator!=(const PartialProb& a, const PartialProb& b) { return !(a == b); }
    friend bool operator<(const PartialProb& a, const PartialProb& b) { return a.value_ < b.value_; }
    friend bool operator<=(const PartialProb& a, const PartialProb& b) { return a.value_ <= b.value_; }

private:
    Rational value_{0};
};

/// p + q when it is at most one; std::nullopt stands for "undefined".
std::optional<PartialProb> prob_add(const PartialProb& p, const PartialProb& q);

/// Product of two probabilities; always defined.
PartialProb prob_mul(const PartialProb& p, const PartialProb& q);

/// Partial sum of a sequence; undefined as soon as a prefix exceeds one.
std::optional<PartialProb> prob_sum(const std::vector<PartialProb>& terms);

} // namespace coaltrace

#endif // COALTRACE_WEIGHTS_HH_

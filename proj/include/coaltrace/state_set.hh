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

#ifndef COALTRACE_STATE_SET_HH_
#define COALTRACE_STATE_SET_HH_

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <set>
#include <vector>

namespace coaltrace {

/// Interned state identifier; indexes the owning automaton's name table.
using StateId = std::uint32_t;
/// Interned letter; indexes the owning automaton's alphabet.
using Label = std::uint32_t;

/**
 * A subset of the fixed universe {0, ..., universe-1}, stored as a bitset.
 *
 * Ordering is lexicographic on the ascending member lists, so that
 * {0} < {0,1} < {0,2} < {1}. Families of sets sorted this way print in
 * the conventional order.
 */
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}
    StateSet(std::size_t universe, std::initializer_list<StateId> members)
        : StateSet(universe) {
        for (StateId m : members) { insert(m); }
    }
    template <class Range>
    static StateSet of(std::size_t universe, const Range& members) {
        StateSet s(universe);
        for (auto m : members) { s.insert(static_cast<StateId>(m)); }
        return s;
    }
    /// Build from the low bits of a mask; requires universe <= 64.
    static StateSet from_mask(std::size_t universe, std::uint64_t mask) {
        assert(universe <= 64);
        StateSet s(universe);
        if (universe > 0) {
            s.words_[0] = universe == 64 ? mask : (mask & ((std::uint64_t{1} << universe) - 1));
        }
        return s;
    }
    static StateSet full(std::size_t universe) {
        StateSet s(universe);
        for (std::size_t i = 0; i < universe; ++i) { s.insert(static_cast<StateId>(i)); }
        return s;
    }

    std::size_t universe() const { return universe_; }

    void insert(StateId x) {
        assert(x < universe_);
        words_[x / 64] |= std::uint64_t{1} << (x % 64);
    }
    void erase(StateId x) {
        assert(x < universe_);
        words_[x / 64] &= ~(std::uint64_t{1} << (x % 64));
    }
    bool contains(StateId x) const {
        return x < universe_ && ((words_[x / 64] >> (x % 64)) & 1U) != 0;
    }
    std::size_t size() const {
        std::size_t n = 0;
        for (auto w : words_) { n += static_cast<std::size_t>(std::popcount(w)); }
        return n;
    }
    bool empty() const {
        for (auto w : words_) {
            if (w != 0) { return false; }
        }
        return true;
    }
    /// Low 64 bits; exact when universe <= 64.
    std::uint64_t mask() const { return words_.empty() ? 0 : words_[0]; }

    StateSet& operator|=(const StateSet& o) {
        assert(o.universe_ == universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) { words_[i] |= o.words_[i]; }
        return *this;
    }
    StateSet& operator&=(const StateSet& o) {
        assert(o.universe_ == universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) { words_[i] &= o.words_[i]; }
        return *this;
    }
    friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
    friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }

    bool intersects(const StateSet& o) const {
        assert(o.universe_ == universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if ((words_[i] & o.words_[i]) != 0) { return true; }
        }
        return false;
    }
    bool is_subset_of(const StateSet& o) const {
        assert(o.universe_ == universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if ((words_[i] & ~o.words_[i]) != 0) { return false; }
        }
        return true;
    }

    std::vector<StateId> members() const {
        std::vector<StateId> out;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w != 0) {
                auto bit = static_cast<std::size_t>(std::countr_zero(w));
                out.push_back(static_cast<StateId>(i * 64 + bit));
                w &= w - 1;
            }
        }
        return out;
    }

    friend bool operator==(const StateSet& a, const StateSet& b) {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }
    friend bool operator<(const StateSet& a, const StateSet& b) {
        if (a.universe_ != b.universe_) { return a.universe_ < b.universe_; }
        // Lexicographic on ascending members: the first differing element
        // decides; the set holding it is smaller, unless the other ran out.
        for (std::size_t i = 0; i < a.words_.size(); ++i) {
            std::uint64_t diff = a.words_[i] ^ b.words_[i];
            if (diff == 0) { continue; }
            std::uint64_t low = diff & (~diff + 1);
            bool in_a = (a.words_[i] & low) != 0;
            // Does the set lacking the element have anything larger?
            const StateSet& lacking = in_a ? b : a;
            bool lacking_has_more = false;
            std::uint64_t above = ~((low << 1) - 1);
            if (low == (std::uint64_t{1} << 63)) { above = 0; }
            if ((lacking.words_[i] & above) != 0) { lacking_has_more = true; }
            for (std::size_t j = i + 1; !lacking_has_more && j < a.words_.size(); ++j) {
                if (lacking.words_[j] != 0) { lacking_has_more = true; }
            }
            // Smaller set: the one holding the element if the other continues,
            // otherwise the one that is a proper prefix.
            return lacking_has_more ? in_a : !in_a;
        }
        return false;
    }
    friend bool operator!=(const StateSet& a, const StateSet& b) { return !(a == b); }
    friend bool operator>(const StateSet& a, const StateSet& b) { return b < a; }
    friend bool operator<=(const StateSet& a, const StateSet& b) { return !(b < a); }
    friend bool operator>=(const StateSet& a, const StateSet& b) { return !(a < b); }

    std::size_t hash() const {
        std::size_t h = std::hash<std::size_t>{}(universe_);
        for (auto w : words_) { h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }
        return h;
    }

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

/// A finite family of finite sets over a common universe.
using Family = std::set<StateSet>;

} // namespace coaltrace

template <>
struct std::hash<coaltrace::StateSet> {
    std::size_t operator()(const coaltrace::StateSet& s) const noexcept { return s.hash(); }
};

#endif // COALTRACE_STATE_SET_HH_

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

#include "coaltrace/determinize.hh"

#include <functional>
#include <optional>
#include <utility>

namespace coaltrace {

namespace {

constexpr std::size_t kMaxChiUniverse = 24;

StateSet union_of(const Family& s, std::size_t universe) {
    StateSet u(universe);
    for (const auto& member : s) { u |= member; }
    return u;
}

} // namespace

std::string render_set(const StateSet& s, const std::vector<std::string>& names) {
    std::string out = "{";
    bool first = true;
    for (StateId x : s.members()) {
        if (!first) { out += ","; }
        first = false;
        out += x < names.size() ? names[x] : std::to_string(x);
    }
    return out + "}";
}

std::string render_predicates(const PredicateSet& p, const std::vector<std::string>& names) {
    std::string out = "{";
    bool first = true;
    for (StateId phi : p.predicates.members()) {
        if (!first) { out += ","; }
        first = false;
        out += render_set(StateSet::from_mask(p.base, phi), names);
    }
    return out + "}";
}

SubsetResult det_subset(const Nfa& n, Branching mode) {
    const std::size_t size = n.num_states();
    const auto succ = n.successor_table();
    const StateSet accepting = StateSet::of(size, n.accepting);
    std::vector<StateSet> seeds;
    for (StateId x = 0; x < size; ++x) { seeds.push_back(StateSet(size, {x})); }
    auto step = [&](const StateSet& s, Label a) {
        StateSet next(size);
        for (StateId x : s.members()) { next |= succ[x][a]; }
        return next;
    };
    auto e = detail::explore<StateSet>(seeds, n.alphabet.size(), step, std::size_t(-1), "subset construction");
    SubsetResult r;
    r.machine.alphabet = n.alphabet;
    for (const auto& s : e.meaning) {
        r.machine.states.push_back(render_set(s, n.states));
        r.machine.output.push_back(mode == Branching::Disjunctive ? s.intersects(accepting)
                                                                  : s.is_subset_of(accepting));
    }
    r.machine.delta = std::move(e.delta);
    r.embed = std::move(e.seeds);
    r.meaning = std::move(e.meaning);
    return r;
}

Family chi_good(const Family& s, std::size_t universe) {
    const auto pool = union_of(s, universe).members();
    if (pool.size() > kMaxChiUniverse) { throw BudgetExceeded("chi: union too large to enumerate", kMaxChiUniverse); }
    Family out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pool.size()); ++bits) {
        StateSet v(universe);
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if ((bits >> i) & 1U) { v.insert(pool[i]); }
        }
        bool meets_all = true;
        for (const auto& u : s) {
            if (!v.intersects(u)) {
                meets_all = false;
                break;
            }
        }
        if (meets_all) { out.insert(std::move(v)); }
    }
    return out;
}

Family chi_wrong(const Family& s, std::size_t universe) {
    Family images{StateSet(universe)};
    for (const auto& u : s) {
        Family next;
        for (const auto& partial : images) {
            for (StateId x : u.members()) {
                StateSet extended = partial;
                extended.insert(x);
                next.insert(std::move(extended));
            }
        }
        images = std::move(next);
    }
    return images;
}

AltNfaResult alt_to_nfa(const AlternatingAut& aut, std::size_t budget) {
    const std::size_t size = aut.num_states();
    const std::size_t letters = aut.alphabet.size();

    std::vector<StateSet> seeds;
    for (StateId x = 0; x < size; ++x) { seeds.push_back(StateSet(size, {x})); }

    // Successors of S under a: the family F = { trans(y)(a) | y in S } is a
    // set of sets of clauses; chi picks sets of clauses V meeting every
    // member, and each V contributes the union of its clauses.
    auto successors = [&](const StateSet& s, Label a) {
        std::vector<StateSet> clauses;
        std::map<StateSet, StateId> clause_id;
        std::vector<std::vector<StateId>> members;
        for (StateId y : s.members()) {
            members.emplace_back();
            for (const auto& c : aut.family(y, a)) {
                auto [it, fresh] = clause_id.emplace(c, static_cast<StateId>(clauses.size()));
                if (fresh) { clauses.push_back(c); }
                members.back().push_back(it->second);
            }
        }
        Family family;
        for (const auto& m : members) { family.insert(StateSet::of(clauses.size(), m)); }
        std::set<StateSet> out;
        for (const auto& v : chi_good(family, clauses.size())) {
            StateSet target(size);
            for (StateId c : v.members()) { target |= clauses[c]; }
            out.insert(std::move(target));
        }
        return out;
    };

    AltNfaResult r;
    std::map<StateSet, StateId> ids;
    auto intern = [&](const StateSet& m) {
        auto [it, fresh] = ids.emplace(m, static_cast<StateId>(r.meaning.size()));
        if (fresh) {
            if (r.meaning.size() >= budget) {
                throw BudgetExceeded("alternating translation: more than " + std::to_string(budget) + " states",
                                     budget);
            }
            r.meaning.push_back(m);
        }
        return it->second;
    };
    for (const auto& s : seeds) { r.embed.push_back(intern(s)); }
    for (std::size_t d = 0; d < r.meaning.size(); ++d) {
        for (Label a = 0; a < letters; ++a) {
            for (const auto& target : successors(r.meaning[d], a)) {
                StateId t = intern(target);
                r.nfa.transitions.insert(Transition{static_cast<StateId>(d), a, t});
            }
        }
    }
    r.nfa.alphabet = aut.alphabet;
    for (std::size_t d = 0; d < r.meaning.size(); ++d) {
        r.nfa.states.push_back(render_set(r.meaning[d], aut.states));
        bool all = true;
        for (StateId y : r.meaning[d].members()) { all = all && aut.output[y]; }
        if (all) { r.nfa.accepting.insert(static_cast<StateId>(d)); }
    }
    return r;
}

namespace {

// Functor pieces of the canonical construction, kept as plain functions so
// that the composite reads like its diagram.
//   X states; T = finite powerset; B Z = 2 x Z^A; F = G = 2^-; L Z = 1 + A x Z.
using Letter = Label;
using PowX = StateSet;                                    // T X
struct BTX {                                              // B T X
    bool out;
    std::vector<PowX> next;
};
using PredX = std::function<bool(StateId)>;               // F X
using PredTX = std::function<bool(const PowX&)>;          // F T X
using PredBTX = std::function<bool(const BTX&)>;          // F B T X
using GFBTX = std::function<bool(const PredBTX&)>;        // G F B T X
template <class P>
using LOf = std::optional<std::pair<Letter, P>>;          // L P, nullopt is the constant
using GLFTX = std::function<bool(const LOf<PredTX>&)>;    // G L F T X
using GLFX = std::function<bool(const LOf<PredX>&)>;      // G L F X

} // namespace

CanonicalResult canonical_det_nfa(const Nfa& n, std::size_t bound) {
    const std::size_t size = n.num_states();
    if (size > bound || size > 5) {
        throw BudgetExceeded("canonical determinization: " + std::to_string(size) + " states exceed the bound " +
                                 std::to_string(bound),
                             bound);
    }
    const std::size_t letters = n.alphabet.size();
    const std::size_t predicates = std::size_t{1} << size;
    const auto succ = n.successor_table();

    // g : X -> B T X
    auto g = [&](StateId x) {
        BTX b{n.is_accepting(x), {}};
        for (Letter a = 0; a < letters; ++a) { b.next.push_back(succ[x][a]); }
        return b;
    };
    // Evaluate a materialized element of G F X on a predicate given pointwise.
    auto eval = [&](const PredicateSet& psi, const PredX& phi) {
        std::uint64_t mask = 0;
        for (StateId x = 0; x < size; ++x) {
            if (phi(x)) { mask |= std::uint64_t{1} << x; }
        }
        return psi.predicates.contains(static_cast<StateId>(mask));
    };
    // G F g : G F X -> G F B T X
    auto GFg = [&](const PredicateSet& psi) -> GFBTX {
        return [&, psi](const PredBTX& phi) { return eval(psi, [&](StateId x) { return phi(g(x)); }); };
    };
    // rho_{TX} : L F T X -> F B T X
    auto rho = [](const LOf<PredTX>& l) -> PredBTX {
        if (!l) { return [](const BTX& b) { return b.out; }; }
        Letter a = l->first;
        PredTX chi = l->second;
        return [a, chi](const BTX& b) { return chi(b.next[a]); };
    };
    // G rho_{TX} : G F B T X -> G L F T X
    auto Grho = [&](const GFBTX& xi) -> GLFTX {
        return [&, xi](const LOf<PredTX>& l) { return xi(rho(l)); };
    };
    // alpha_X : F X -> F T X, the diamond
    auto alpha = [&](const PredX& phi) -> PredTX {
        return [phi](const PowX& s) {
            for (StateId x : s.members()) {
                if (phi(x)) { return true; }
            }
            return false;
        };
    };
    // G L alpha_X : G L F T X -> G L F X
    auto GLalpha = [&](const GLFTX& theta) -> GLFX {
        return [&, theta](const LOf<PredX>& l) {
            if (!l) { return theta(std::nullopt); }
            return theta(LOf<PredTX>(std::in_place, l->first, alpha(l->second)));
        };
    };
    // (rho-flat)^{-1}_{FX} : G L F X -> B G F X
    struct BGFX {
        bool out;
        std::vector<PredicateSet> next;
    };
    auto rho_flat_inv = [&](const GLFX& theta) {
        BGFX b{theta(std::nullopt), {}};
        for (Letter a = 0; a < letters; ++a) {
            PredicateSet next{size, StateSet(predicates)};
            for (std::size_t p = 0; p < predicates; ++p) {
                PredX phi = [p](StateId x) { return ((p >> x) & 1U) != 0; };
                if (theta(LOf<PredX>(std::in_place, a, phi))) { next.predicates.insert(static_cast<StateId>(p)); }
            }
            b.next.push_back(std::move(next));
        }
        return b;
    };
    auto structure = [&](const PredicateSet& psi) { return rho_flat_inv(GLalpha(Grho(GFg(psi)))); };

    std::vector<PredicateSet> seeds;
    for (StateId x = 0; x < size; ++x) {
        PredicateSet iota{size, StateSet(predicates)};
        for (std::size_t p = 0; p < predicates; ++p) {
            if ((p >> x) & 1U) { iota.predicates.insert(static_cast<StateId>(p)); }
        }
        seeds.push_back(std::move(iota));
    }
    std::map<PredicateSet, BGFX> cache;
    auto lookup = [&](const PredicateSet& psi) -> const BGFX& {
        auto it = cache.find(psi);
        if (it == cache.end()) { it = cache.emplace(psi, structure(psi)).first; }
        return it->second;
    };
    auto step = [&](const PredicateSet& psi, Label a) { return lookup(psi).next[a]; };
    auto e = detail::explore<PredicateSet>(seeds, letters, step, std::size_t(-1), "canonical determinization");
    CanonicalResult r;
    r.machine.alphabet = n.alphabet;
    for (std::size_t d = 0; d < e.meaning.size(); ++d) {
        r.machine.output.push_back(lookup(e.meaning[d]).out);
        r.machine.states.push_back("c" + std::to_string(d));
    }
    r.machine.delta = std::move(e.delta);
    r.embed = std::move(e.seeds);
    r.meaning = std::move(e.meaning);
    return r;
}

} // namespace coaltrace

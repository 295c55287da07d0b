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

/* laws.hh -- finite-instance checkers for the side conditions behind the
 * trace semantics and determinization constructions.
 *
 * Every checker enumerates its declared finite domain exhaustively unless the
 * documentation of that checker names a cardinality cap or sampling. A
 * report lists each instance on which the two sides of the law differ.
 */

#ifndef COALTRACE_LAWS_HH_
#define COALTRACE_LAWS_HH_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "coaltrace/automata.hh"
#include "coaltrace/determinize.hh"
#include "coaltrace/semantics.hh"
#include "coaltrace/weights.hh"

namespace coaltrace {

struct LawFailure {
    std::string input;
    std::string lhs;
    std::string rhs;
};

struct LawReport {
    std::string law;
    std::size_t instances = 0;
    std::vector<LawFailure> failures;

    bool holds() const { return failures.empty(); }
    /// "law: N instances, K failures"
    std::string summary() const;
};

/// Formats a failure as "input: lhs vs rhs".
std::string render_failure(const LawFailure& f);

// ---------------------------------------------------------------------------
// Naturality of transformations P P => P P.

/// One component per finite set {0, ..., universe-1}.
using FamilyTransform = std::function<Family(const Family&, std::size_t universe)>;

enum class Shape { PowPow };

struct FiniteNatTrans {
    std::string name;
    Shape shape = Shape::PowPow;
    FamilyTransform component;
};

FiniteNatTrans chi_good_transform();
FiniteNatTrans chi_wrong_transform();
FiniteNatTrans identity_transform();

/// Names elements a, b, c, ... starting at letter `offset`.
std::vector<std::string> letter_names(std::size_t n, std::size_t offset = 0);

/// "{{a,c},{b,c}}"
std::string render_family(const Family& f, const std::vector<std::string>& names);

/**
 * Checks map f (t_X(S)) = t_Y(map f (S)) for every f : X -> Y and S in P P X.
 * Exhaustive over all |X|, |Y| <= max_size when max_size <= 3; above that,
 * the exhaustive part up to 3 is followed by `samples` seeded random
 * instances with |X|, |Y| <= max_size. Failures record lhs = map f (t_X(S))
 * and rhs = t_Y(map f (S)), with X named a, b, ... and Y continuing the
 * letters after X.
 */
LawReport check_naturality(const FiniteNatTrans& t, std::size_t max_size, std::uint64_t seed = 1,
                           std::size_t samples = 20'000);

/// For |X| <= max_base and every S in P P (2^X): box . P diamond (S) equals
/// diamond . P box . chi (S), pointwise on X.
LawReport check_chi_distributes(std::size_t max_base = 2);

// ---------------------------------------------------------------------------
// Actions and monad morphisms for the powerset monad.

enum class Modality { Diamond, Box };

/// A component of a mate P 2^- => 2^- at Phi = {0, ..., phi-1}: takes a set
/// of predicates (StateSet over the 2^phi predicate masks) to a predicate mask.
using PowersetAction = std::function<std::uint64_t(const StateSet& predicates, std::size_t phi)>;

PowersetAction powerset_action(Modality m);

/**
 * Unit law act({p}) = p for every predicate p, and multiplication law
 * act(union of F) = act({act(U) | U in F}) for F in P P(2^Phi), |Phi| <= max_phi.
 * Exhaustive for |Phi| <= 2; for |Phi| = 3 the families F range over all
 * families of at most `outer_cap` sets.
 */
LawReport check_action_laws(const PowersetAction& act, const std::string& name, std::size_t max_phi,
                            std::size_t outer_cap = 3);

/// Action laws of sum-of-weights on M(S^Phi), over functions Phi -> pool and
/// weight vectors with at most `max_support` entries drawn from the pool.
template <Semiring S>
LawReport check_weighted_action_laws(const std::vector<typename S::value_type>& pool, std::size_t max_phi,
                                     std::size_t max_support = 2);

/// Resolution of branching over the truth values of a predicate on a finite
/// set: any_of for the diamond, all_of for the box.
using Lifting = std::function<bool(const std::vector<bool>&)>;

Lifting lifting(Modality m);

/**
 * The encoding enc_X(U)(phi) = lift([phi(x) | x in U]) into the double
 * contravariant powerset monad, checked against both monad morphism laws:
 * enc({x}) = iota(x), and enc(union UU) = mu(enc enc (UU)) with
 * mu(Xi)(phi) = Xi(ev_phi). Exhaustive over all sets of size <= max_size.
 */
LawReport check_monad_morphism(const Lifting& lift, const std::string& name, std::size_t max_size);

// ---------------------------------------------------------------------------
// Morphism-of-logics diagrams.

enum class LogicDiagram { SubsetTau, ConjunctiveTau, WeightedKappa, AltKappa };

std::string diagram_name(LogicDiagram which);

/**
 * Evaluates both paths of the morphism-of-logics square for the named
 * distribution on every argument, for alphabets of 1 or 2 letters and
 * |Phi| <= max_phi. Argument sets are enumerated exhaustively when the
 * domain has at most 16 elements, otherwise all arguments of cardinality at
 * most 3 are checked; domains of more than 64 elements are skipped.
 * With `corrupt`, the output component of the distribution is flipped on
 * the first argument of each domain.
 */
LawReport check_logic_morphism_diagram(LogicDiagram which, std::size_t max_phi, bool corrupt = false);

/// WeightedKappa over an arbitrary semiring, with predicate values and
/// argument weights taken from `pool` (zero included).
template <Semiring S>
LawReport check_weighted_kappa(const std::vector<typename S::value_type>& pool, std::size_t max_phi,
                               std::size_t max_letters = 2, bool corrupt = false);

// ---------------------------------------------------------------------------
// Correctness of determinizations: trace of x equals trace of embed(x).

LawReport check_correctness(const Nfa& source, const SubsetResult& det, Branching mode, std::size_t depth);
LawReport check_correctness(const AlternatingAut& source, const AltNfaResult& det, std::size_t depth);
LawReport check_correctness(const Nfa& source, const CanonicalResult& det, std::size_t depth);
template <Semiring S>
LawReport check_correctness(const WeightedAut<S>& source, const WeightedResult<S>& det, std::size_t depth);

namespace detail {

/// Compares two families of tables word by word.
template <class V, class Render>
void compare_tables(const std::vector<LanguageTable<V>>& lhs, const std::vector<LanguageTable<V>>& rhs,
                    const std::vector<std::string>& states, const std::vector<std::string>& alphabet,
                    Render&& render, LawReport& report) {
    for (std::size_t x = 0; x < lhs.size(); ++x) {
        for (std::size_t k = 0; k <= lhs[x].depth(); ++k) {
            const auto& l = lhs[x].layer(k);
            const auto& r = rhs[x].layer(k);
            for (std::size_t i = 0; i < l.size(); ++i) {
                ++report.instances;
                if (!(l[i] == r[i])) {
                    Word w = LanguageTable<V>::word_at(k, i, alphabet.size());
                    report.failures.push_back(LawFailure{"state " + states[x] + ", word " + render_word(w, alphabet),
                                                         render(l[i]), render(r[i])});
                }
            }
        }
    }
}

/// Tables of the embedded states of a deterministic result.
template <Semiring S>
std::vector<LanguageTable<typename S::value_type>> embedded_tables(const MooreAut<S>& m,
                                                                   const std::vector<StateId>& embed,
                                                                   std::size_t depth) {
    auto all = moore_trace_all(m, depth);
    std::vector<LanguageTable<typename S::value_type>> out;
    for (StateId d : embed) { out.push_back(all[d]); }
    return out;
}

} // namespace detail

template <Semiring S>
LawReport check_correctness(const WeightedAut<S>& source, const WeightedResult<S>& det, std::size_t depth) {
    LawReport report{"correctness of weighted determinization", 0, {}};
    detail::compare_tables(wa_trace_all(source, depth), detail::embedded_tables(det.machine, det.embed, depth),
                           source.states, source.alphabet,
                           [](const typename S::value_type& v) { return S::to_string(v); }, report);
    return report;
}

template <Semiring S>
LawReport check_weighted_action_laws(const std::vector<typename S::value_type>& pool, std::size_t max_phi,
                                     std::size_t max_support) {
    using V = typename S::value_type;
    using Fn = std::vector<V>;           // element of S^Phi
    using Outer = WeightVec<S, Fn>;      // element of M S^Phi
    LawReport report{std::string("weighted action laws over ") + std::string(S::name), 0, {}};

    std::vector<V> weights;
    for (const auto& v : pool) {
        if (!is_zero<S>(v)) { weights.push_back(v); }
    }
    auto render_fn = [](const Fn& f) {
        std::string s = "(";
        for (std::size_t i = 0; i < f.size(); ++i) { s += (i ? "," : "") + S::to_string(f[i]); }
        return s + ")";
    };
    // All vectors over `keys` with support <= max_support and weights from the pool.
    auto vectors = [&](const auto& keys) {
        using K = typename std::decay_t<decltype(keys)>::value_type;
        std::vector<WeightVec<S, K>> out{WeightVec<S, K>{}};
        std::vector<WeightVec<S, K>> frontier{WeightVec<S, K>{}};
        std::vector<std::size_t> last{0};
        for (std::size_t s = 1; s <= max_support; ++s) {
            std::vector<WeightVec<S, K>> next;
            std::vector<std::size_t> next_last;
            for (std::size_t i = 0; i < frontier.size(); ++i) {
                for (std::size_t k = (s == 1 ? 0 : last[i] + 1); k < keys.size(); ++k) {
                    for (const auto& w : weights) {
                        auto v = frontier[i];
                        v.set(keys[k], w);
                        next.push_back(v);
                        next_last.push_back(k);
                    }
                }
            }
            out.insert(out.end(), next.begin(), next.end());
            frontier = std::move(next);
            last = std::move(next_last);
        }
        return out;
    };
    auto act = [](const Outer& psi, std::size_t phi) {
        Fn out(phi, S::zero());
        for (const auto& [f, w] : psi) {
            for (std::size_t i = 0; i < phi; ++i) { out[i] = S::add(out[i], S::mul(w, f[i])); }
        }
        return out;
    };
    for (std::size_t phi = 0; phi <= max_phi; ++phi) {
        std::vector<Fn> fns{Fn{}};
        for (std::size_t i = 0; i < phi; ++i) {
            std::vector<Fn> next;
            for (const auto& f : fns) {
                for (const auto& v : pool) {
                    next.push_back(f);
                    next.back().push_back(v);
                }
            }
            fns = std::move(next);
        }
        for (const auto& f : fns) {
            ++report.instances;
            Fn back = act(Outer::unit(f), phi);
            if (back != f) { report.failures.push_back({"unit at " + render_fn(f), render_fn(back), render_fn(f)}); }
        }
        const auto outers = vectors(fns);
        for (const auto& big : vectors(outers)) {
            ++report.instances;
            Fn lhs = act(monad_mul(big), phi);
            Fn rhs = act(map_weights(big, [&](const Outer& o) { return act(o, phi); }), phi);
            if (lhs != rhs) {
                report.failures.push_back({"multiplication, |Phi|=" + std::to_string(phi), render_fn(lhs),
                                           render_fn(rhs)});
            }
        }
    }
    return report;
}

template <Semiring S>
LawReport check_weighted_kappa(const std::vector<typename S::value_type>& pool, std::size_t max_phi,
                               std::size_t max_letters, bool corrupt) {
    using V = typename S::value_type;
    using Fn = std::vector<V>;  // element of S^Phi
    LawReport report{std::string("logic morphism WeightedKappa over ") + std::string(S::name), 0, {}};
    auto render = [](const std::vector<V>& f) {
        std::string s = "(";
        for (std::size_t i = 0; i < f.size(); ++i) { s += (i ? "," : "") + S::to_string(f[i]); }
        return s + ")";
    };
    for (std::size_t letters = 1; letters <= max_letters; ++letters) {
        for (std::size_t phi = 1; phi <= max_phi; ++phi) {
            std::vector<Fn> fns{Fn{}};
            for (std::size_t i = 0; i < phi; ++i) {
                std::vector<Fn> next;
                for (const auto& f : fns) {
                    for (const auto& v : pool) {
                        next.push_back(f);
                        next.back().push_back(v);
                    }
                }
                fns = std::move(next);
            }
            // Domain A x S^Phi + 1: index 0 is the constant, 1 + a*|fns| + j is (a, fns[j]).
            const std::size_t dom = 1 + letters * fns.size();
            const std::size_t cod = 1 + letters * phi;
            // rho-flat : A x S^Phi + 1 -> S^{A x Phi + 1}
            auto rho_flat = [&](std::size_t b) {
                std::vector<V> out(cod, S::zero());
                if (b == 0) {
                    out[0] = S::one();
                } else {
                    std::size_t a = (b - 1) / fns.size();
                    const Fn& psi = fns[(b - 1) % fns.size()];
                    for (std::size_t w = 0; w < phi; ++w) { out[1 + a * phi + w] = psi[w]; }
                }
                return out;
            };
            // Arguments: all functions dom -> pool; too many are capped by size.
            std::size_t total = 1;
            bool too_big = false;
            for (std::size_t i = 0; i < dom; ++i) {
                total *= pool.size();
                if (total > 200'000) {
                    too_big = true;
                    break;
                }
            }
            if (too_big) { continue; }
            for (std::size_t code = 0; code < total; ++code) {
                std::vector<V> arg(dom);
                std::size_t c = code;
                for (std::size_t i = 0; i < dom; ++i) {
                    arg[i] = pool[c % pool.size()];
                    c /= pool.size();
                }
                ++report.instances;
                // Upper path: M rho-flat, then the weighted sum.
                std::vector<V> upper(cod, S::zero());
                for (std::size_t b = 0; b < dom; ++b) {
                    auto r = rho_flat(b);
                    for (std::size_t l = 0; l < cod; ++l) { upper[l] = S::add(upper[l], S::mul(arg[b], r[l])); }
                }
                // Lower path: kappa, then K alpha-flat, then theta-flat.
                V out = arg[0];
                if (corrupt && code == 0) { out = S::add(out, S::one()); }
                std::vector<std::vector<V>> trans(letters, std::vector<V>(phi, S::zero()));
                for (std::size_t a = 0; a < letters; ++a) {
                    for (std::size_t j = 0; j < fns.size(); ++j) {
                        const V& weight = arg[1 + a * fns.size() + j];
                        for (std::size_t w = 0; w < phi; ++w) {
                            trans[a][w] = S::add(trans[a][w], S::mul(weight, fns[j][w]));
                        }
                    }
                }
                std::vector<V> lower(cod);
                lower[0] = out;
                for (std::size_t a = 0; a < letters; ++a) {
                    for (std::size_t w = 0; w < phi; ++w) { lower[1 + a * phi + w] = trans[a][w]; }
                }
                if (upper != lower) {
                    report.failures.push_back({"|A|=" + std::to_string(letters) + ", |Phi|=" + std::to_string(phi) +
                                                   ", argument " + render(arg),
                                               render(upper), render(lower)});
                }
            }
        }
    }
    return report;
}

} // namespace coaltrace

#endif // COALTRACE_LAWS_HH_

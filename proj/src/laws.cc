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

#include "coaltrace/laws.hh"

#include <algorithm>
#include <map>
#include <random>

namespace coaltrace {

std::string LawReport::summary() const {
    return law + ": " + std::to_string(instances) + " instances, " + std::to_string(failures.size()) + " failures";
}

std::string render_failure(const LawFailure& f) {
    return f.input + ": " + f.lhs + " vs " + f.rhs;
}

std::vector<std::string> letter_names(std::size_t n, std::size_t offset) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t k = offset + i;
        out.push_back(k < 26 ? std::string(1, char('a' + k)) : "e" + std::to_string(k));
    }
    return out;
}

std::string render_family(const Family& f, const std::vector<std::string>& names) {
    std::string out = "{";
    bool first = true;
    for (const auto& s : f) {
        if (!first) { out += ","; }
        first = false;
        out += render_set(s, names);
    }
    return out + "}";
}

FiniteNatTrans chi_good_transform() {
    return {"chi-good", Shape::PowPow, [](const Family& s, std::size_t u) { return chi_good(s, u); }};
}

FiniteNatTrans chi_wrong_transform() {
    return {"chi-wrong", Shape::PowPow, [](const Family& s, std::size_t u) { return chi_wrong(s, u); }};
}

FiniteNatTrans identity_transform() {
    return {"identity", Shape::PowPow, [](const Family& s, std::size_t) { return s; }};
}

namespace {

/// P P f on a family.
Family map_family(const Family& s, const std::vector<StateId>& f, std::size_t target) {
    Family out;
    for (const auto& member : s) {
        StateSet image(target);
        for (StateId x : member.members()) { image.insert(f[x]); }
        out.insert(std::move(image));
    }
    return out;
}

/// Family whose members are the subsets of X selected by the bits of `code`.
Family family_from_code(std::uint64_t code, std::size_t base) {
    Family s;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << base); ++m) {
        if ((code >> m) & 1U) { s.insert(StateSet::from_mask(base, m)); }
    }
    return s;
}

void check_naturality_instance(const FiniteNatTrans& t, const Family& s, const std::vector<StateId>& f,
                               std::size_t x_size, std::size_t y_size, LawReport& report) {
    ++report.instances;
    Family lhs = map_family(t.component(s, x_size), f, y_size);
    Family rhs = t.component(map_family(s, f, y_size), y_size);
    if (lhs == rhs) { return; }
    const auto xs = letter_names(x_size);
    const auto ys = letter_names(y_size, x_size);
    std::string input = "X=" + render_set(StateSet::full(x_size), xs) + ", Y=" + render_set(StateSet::full(y_size), ys);
    for (std::size_t x = 0; x < x_size; ++x) { input += ", f(" + xs[x] + ")=" + ys[f[x]]; }
    input += ", S=" + render_family(s, xs);
    report.failures.push_back(LawFailure{std::move(input), render_family(lhs, ys), render_family(rhs, ys)});
}

} // namespace

LawReport check_naturality(const FiniteNatTrans& t, std::size_t max_size, std::uint64_t seed, std::size_t samples) {
    LawReport report{"naturality of " + t.name, 0, {}};
    const std::size_t exhaustive = std::min<std::size_t>(max_size, 3);
    for (std::size_t xn = 0; xn <= exhaustive; ++xn) {
        for (std::size_t yn = (xn == 0 ? 0 : 1); yn <= exhaustive; ++yn) {
            std::size_t functions = 1;
            for (std::size_t i = 0; i < xn; ++i) { functions *= yn; }
            for (std::size_t code = 0; code < functions; ++code) {
                std::vector<StateId> f(xn);
                std::size_t c = code;
                for (std::size_t i = 0; i < xn; ++i) {
                    f[i] = static_cast<StateId>(c % yn);
                    c /= yn;
                }
                const std::uint64_t families = std::uint64_t{1} << (std::uint64_t{1} << xn);
                for (std::uint64_t s = 0; s < families; ++s) {
                    check_naturality_instance(t, family_from_code(s, xn), f, xn, yn, report);
                }
            }
        }
    }
    if (max_size > 3) {
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < samples; ++i) {
            std::size_t xn = 1 + rng() % max_size;
            std::size_t yn = 1 + rng() % max_size;
            std::vector<StateId> f(xn);
            for (auto& v : f) { v = static_cast<StateId>(rng() % yn); }
            Family s;
            std::size_t members = rng() % 5;
            for (std::size_t k = 0; k < members; ++k) { s.insert(StateSet::from_mask(xn, rng())); }
            check_naturality_instance(t, s, f, xn, yn, report);
        }
    }
    return report;
}

namespace {

std::uint64_t full_mask(std::size_t n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

std::string render_mask(std::uint64_t m, std::size_t n) {
    return render_set(StateSet::from_mask(n, m), letter_names(n));
}

} // namespace

LawReport check_chi_distributes(std::size_t max_base) {
    LawReport report{"chi distributes conjunction over disjunction", 0, {}};
    auto diamond = powerset_action(Modality::Diamond);
    auto box = powerset_action(Modality::Box);
    for (std::size_t base = 0; base <= max_base; ++base) {
        const std::size_t preds = std::size_t{1} << base;
        const std::size_t sets = std::size_t{1} << preds;
        const std::uint64_t families = std::uint64_t{1} << sets;
        for (std::uint64_t code = 0; code < families; ++code) {
            // S: a family of sets of predicates; member m is the set of predicate masks in bits of m.
            Family s;
            for (std::uint64_t m = 0; m < sets; ++m) {
                if ((code >> m) & 1U) { s.insert(StateSet::from_mask(preds, m)); }
            }
            ++report.instances;
            // box . P diamond
            StateSet upper_arg(preds);
            for (const auto& u : s) { upper_arg.insert(static_cast<StateId>(diamond(u, base))); }
            std::uint64_t upper = box(upper_arg, base);
            // diamond . P box . chi
            StateSet lower_arg(preds);
            for (const auto& v : chi_good(s, preds)) { lower_arg.insert(static_cast<StateId>(box(v, base))); }
            std::uint64_t lower = diamond(lower_arg, base);
            if (upper != lower) {
                std::string input = "|X|=" + std::to_string(base) + ", S=" + std::to_string(code);
                report.failures.push_back({input, render_mask(upper, base), render_mask(lower, base)});
            }
        }
    }
    return report;
}

PowersetAction powerset_action(Modality m) {
    if (m == Modality::Diamond) {
        return [](const StateSet& preds, std::size_t) {
            std::uint64_t out = 0;
            for (StateId p : preds.members()) { out |= p; }
            return out;
        };
    }
    return [](const StateSet& preds, std::size_t phi) {
        std::uint64_t out = full_mask(phi);
        for (StateId p : preds.members()) { out &= p; }
        return out;
    };
}

LawReport check_action_laws(const PowersetAction& act, const std::string& name, std::size_t max_phi,
                            std::size_t outer_cap) {
    LawReport report{"action laws of " + name, 0, {}};
    for (std::size_t phi = 0; phi <= max_phi; ++phi) {
        const std::size_t preds = std::size_t{1} << phi;   // |G Phi|
        const std::size_t sets = std::size_t{1} << preds;  // |T G Phi|
        for (std::size_t p = 0; p < preds; ++p) {
            ++report.instances;
            std::uint64_t back = act(StateSet(preds, {static_cast<StateId>(p)}), phi);
            if (back != p) {
                report.failures.push_back({"unit at predicate " + render_mask(p, phi), render_mask(back, phi),
                                           render_mask(p, phi)});
            }
        }
        auto check = [&](const std::vector<std::uint64_t>& outer) {
            ++report.instances;
            StateSet merged(preds);
            StateSet acted(preds);
            for (std::uint64_t u : outer) {
                StateSet member = StateSet::from_mask(preds, u);
                merged |= member;
                acted.insert(static_cast<StateId>(act(member, phi)));
            }
            std::uint64_t lhs = act(merged, phi);
            std::uint64_t rhs = act(acted, phi);
            if (lhs != rhs) {
                std::string input = "|Phi|=" + std::to_string(phi) + ", family of " + std::to_string(outer.size()) +
                                    " sets";
                report.failures.push_back({input, render_mask(lhs, phi), render_mask(rhs, phi)});
            }
        };
        if (sets <= 16) {
            for (std::uint64_t code = 0; code < (std::uint64_t{1} << sets); ++code) {
                std::vector<std::uint64_t> outer;
                for (std::uint64_t u = 0; u < sets; ++u) {
                    if ((code >> u) & 1U) { outer.push_back(u); }
                }
                check(outer);
            }
        } else {
            // All families of at most outer_cap distinct sets, as increasing tuples.
            std::vector<std::uint64_t> outer;
            std::function<void(std::uint64_t)> extend = [&](std::uint64_t from) {
                check(outer);
                if (outer.size() == outer_cap) { return; }
                for (std::uint64_t u = from; u < sets; ++u) {
                    outer.push_back(u);
                    extend(u + 1);
                    outer.pop_back();
                }
            };
            extend(0);
        }
    }
    return report;
}

Lifting lifting(Modality m) {
    if (m == Modality::Diamond) {
        return [](const std::vector<bool>& v) { return std::any_of(v.begin(), v.end(), [](bool b) { return b; }); };
    }
    return [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
}

LawReport check_monad_morphism(const Lifting& lift, const std::string& name, std::size_t max_size) {
    LawReport report{"monad morphism laws of " + name, 0, {}};
    for (std::size_t n = 0; n <= max_size; ++n) {
        const auto names = letter_names(n);
        const std::size_t preds = std::size_t{1} << n;
        using Pred = std::function<bool(StateId)>;        // F X
        using GF = std::function<bool(const Pred&)>;      // G F X
        using PredGF = std::function<bool(const GF&)>;    // F G F X
        using GFGF = std::function<bool(const PredGF&)>;  // G F G F X

        auto pred = [](std::uint64_t mask) -> Pred { return [mask](StateId x) { return ((mask >> x) & 1U) != 0; }; };
        // enc_X(U)(phi) = lift([phi(x) | x in U])
        auto enc = [&](const StateSet& u) -> GF {
            return [&, u](const Pred& phi) {
                std::vector<bool> values;
                for (StateId x : u.members()) { values.push_back(phi(x)); }
                return lift(values);
            };
        };
        auto iota = [](StateId x) -> GF { return [x](const Pred& phi) { return phi(x); }; };
        // enc at G F X applied to a finite list of its elements.
        auto enc_outer = [&](std::vector<GF> elements) -> GFGF {
            return [&, elements](const PredGF& sigma) {
                std::vector<bool> values;
                for (const auto& e : elements) { values.push_back(sigma(e)); }
                return lift(values);
            };
        };
        // mu(Xi)(phi) = Xi(ev_phi)
        auto mu = [](const GFGF& xi) -> GF {
            return [xi](const Pred& phi) { return xi([phi](const GF& psi) { return psi(phi); }); };
        };
        auto table = [&](const GF& g) {
            std::uint64_t t = 0;
            for (std::uint64_t p = 0; p < preds; ++p) {
                if (g(pred(p))) { t |= std::uint64_t{1} << p; }
            }
            return t;
        };
        auto render_gf = [&](std::uint64_t t) {
            std::string s = "{";
            bool first = true;
            for (std::uint64_t p = 0; p < preds; ++p) {
                if ((t >> p) & 1U) {
                    s += (first ? "" : ",") + render_set(StateSet::from_mask(n, p), names);
                    first = false;
                }
            }
            return s + "}";
        };

        for (StateId x = 0; x < n; ++x) {
            ++report.instances;
            auto l = table(enc(StateSet(n, {x})));
            auto r = table(iota(x));
            if (l != r) { report.failures.push_back({"unit at " + names[x], render_gf(l), render_gf(r)}); }
        }
        const std::size_t subsets = std::size_t{1} << n;
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << subsets); ++code) {
            Family uu = family_from_code(code, n);
            ++report.instances;
            StateSet joined(n);
            for (const auto& u : uu) { joined |= u; }
            auto l = table(enc(joined));
            // T enc, deduplicated extensionally, then enc at G F X, then mu.
            std::vector<GF> images;
            std::set<std::uint64_t> seen;
            for (const auto& u : uu) {
                GF e = enc(u);
                if (seen.insert(table(e)).second) { images.push_back(e); }
            }
            auto r = table(mu(enc_outer(images)));
            if (l != r) {
                report.failures.push_back({"multiplication at " + render_family(uu, names), render_gf(l), render_gf(r)});
            }
        }
    }
    return report;
}

std::string diagram_name(LogicDiagram which) {
    switch (which) {
    case LogicDiagram::SubsetTau: return "SubsetTau";
    case LogicDiagram::ConjunctiveTau: return "ConjunctiveTau";
    case LogicDiagram::WeightedKappa: return "WeightedKappa";
    case LogicDiagram::AltKappa: return "AltKappa";
    }
    return "?";
}

namespace {

constexpr std::size_t kExhaustiveDomain = 16;
constexpr std::size_t kMaxDomain = 64;
constexpr std::size_t kArgumentCap = 3;

/// Calls visit(members) for every argument set over a domain of `dom`
/// elements, exhaustively or capped as documented.
template <class Visit>
void for_each_argument(std::size_t dom, Visit&& visit) {
    std::vector<std::size_t> members;
    if (dom <= kExhaustiveDomain) {
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << dom); ++code) {
            members.clear();
            for (std::size_t i = 0; i < dom; ++i) {
                if ((code >> i) & 1U) { members.push_back(i); }
            }
            visit(members);
        }
        return;
    }
    std::function<void(std::size_t)> extend = [&](std::size_t from) {
        visit(members);
        if (members.size() == kArgumentCap) { return; }
        for (std::size_t i = from; i < dom; ++i) {
            members.push_back(i);
            extend(i + 1);
            members.pop_back();
        }
    };
    extend(0);
}

/// Element (o, t) of 2 x Z^A, with t(a) an index into Z.
struct OutTrans {
    bool out;
    std::vector<std::size_t> next;
};

OutTrans decode(std::size_t e, std::size_t letters, std::size_t z) {
    OutTrans d{(e & 1U) != 0, {}};
    e >>= 1;
    for (std::size_t a = 0; a < letters; ++a) {
        d.next.push_back(e % z);
        e /= z;
    }
    return d;
}

/// Index of (a, w) in the codomain 2^{A x Phi + 1}; the constant has index 0.
std::size_t label_bit(std::size_t a, std::size_t w, std::size_t phi) {
    return 1 + a * phi + w;
}

std::string render_bits(std::uint64_t bits, std::size_t letters, std::size_t phi) {
    std::string s = "{";
    bool first = true;
    auto add = [&](const std::string& item) {
        s += (first ? "" : ",") + item;
        first = false;
    };
    if (bits & 1U) { add("*"); }
    for (std::size_t a = 0; a < letters; ++a) {
        for (std::size_t w = 0; w < phi; ++w) {
            if ((bits >> label_bit(a, w, phi)) & 1U) { add("(" + letter_names(letters)[a] + "," + std::to_string(w) + ")"); }
        }
    }
    return s + "}";
}

/// Subset / conjunctive distribution P(2 x (2^Phi)^A) -> 2 x (P 2^Phi)^A
/// against the logic 2 x (2^Phi)^A -> 2^{A x Phi + 1}.
void check_tau(bool conjunctive, std::size_t letters, std::size_t phi, bool corrupt, LawReport& report) {
    const std::size_t preds = std::size_t{1} << phi;
    std::size_t dom = 2;
    for (std::size_t a = 0; a < letters; ++a) { dom *= preds; }
    if (dom > kMaxDomain) { return; }
    auto act = powerset_action(conjunctive ? Modality::Box : Modality::Diamond);
    // rho-flat(o, t)(*) = o, rho-flat(o, t)(a, w) = t(a)(w)
    auto rho_flat = [&](const OutTrans& b) {
        std::uint64_t bits = b.out ? 1U : 0U;
        for (std::size_t a = 0; a < letters; ++a) {
            for (std::size_t w = 0; w < phi; ++w) {
                if ((b.next[a] >> w) & 1U) { bits |= std::uint64_t{1} << label_bit(a, w, phi); }
            }
        }
        return bits;
    };
    const std::size_t cod = 1 + letters * phi;
    bool first = true;
    for_each_argument(dom, [&](const std::vector<std::size_t>& members) {
        ++report.instances;
        // Upper path: P rho-flat, then the lifting on 2^{L Phi}.
        StateSet images(std::size_t{1} << cod);
        for (std::size_t e : members) { images.insert(static_cast<StateId>(rho_flat(decode(e, letters, preds)))); }
        std::uint64_t upper = act(images, cod);
        // Lower path: distribute, lift each letter, then rho-flat.
        bool out = conjunctive;
        std::vector<StateSet> trans(letters, StateSet(preds));
        for (std::size_t e : members) {
            auto b = decode(e, letters, preds);
            out = conjunctive ? (out && b.out) : (out || b.out);
            for (std::size_t a = 0; a < letters; ++a) { trans[a].insert(static_cast<StateId>(b.next[a])); }
        }
        if (corrupt && first) { out = !out; }
        first = false;
        OutTrans lowered{out, {}};
        for (std::size_t a = 0; a < letters; ++a) { lowered.next.push_back(act(trans[a], phi)); }
        std::uint64_t lower = rho_flat(lowered);
        if (upper != lower) {
            std::string input = "|A|=" + std::to_string(letters) + ", |Phi|=" + std::to_string(phi) + ", argument of " +
                                std::to_string(members.size()) + " elements";
            report.failures.push_back({input, render_bits(upper, letters, phi), render_bits(lower, letters, phi)});
        }
    });
}

/// Alternating distribution P(2 x (P 2^Phi)^A) -> 2 x (P P 2^Phi)^A via
/// B chi after tau, against the logics built from diamond and box.
void check_alt_kappa(std::size_t letters, std::size_t phi, bool corrupt, LawReport& report) {
    const std::size_t preds = std::size_t{1} << phi;   // |G Phi|
    const std::size_t sets = std::size_t{1} << preds;  // |P G Phi|
    std::size_t dom = 2;
    for (std::size_t a = 0; a < letters; ++a) { dom *= sets; }
    if (dom > kMaxDomain) { return; }
    auto diamond = powerset_action(Modality::Diamond);
    auto box = powerset_action(Modality::Box);
    const std::size_t cod = 1 + letters * phi;
    // Composite logic for 2 x (P -)^A: rho-flat after B diamond.
    auto logic = [&](bool out, const std::vector<StateSet>& next) {
        std::uint64_t bits = out ? 1U : 0U;
        for (std::size_t a = 0; a < letters; ++a) {
            std::uint64_t p = diamond(next[a], phi);
            for (std::size_t w = 0; w < phi; ++w) {
                if ((p >> w) & 1U) { bits |= std::uint64_t{1} << label_bit(a, w, phi); }
            }
        }
        return bits;
    };
    bool first = true;
    for_each_argument(dom, [&](const std::vector<std::size_t>& members) {
        ++report.instances;
        // Upper path: P of the composite logic, then the box on 2^{L Phi}.
        StateSet images(std::size_t{1} << cod);
        for (std::size_t e : members) {
            auto b = decode(e, letters, sets);
            std::vector<StateSet> next;
            for (std::size_t a = 0; a < letters; ++a) { next.push_back(StateSet::from_mask(preds, b.next[a])); }
            images.insert(static_cast<StateId>(logic(b.out, next)));
        }
        std::uint64_t upper = box(images, cod);
        // Lower path: tau, then B chi, then B P box, then the composite logic.
        bool out = true;
        std::vector<Family> families(letters);
        for (std::size_t e : members) {
            auto b = decode(e, letters, sets);
            out = out && b.out;
            for (std::size_t a = 0; a < letters; ++a) { families[a].insert(StateSet::from_mask(preds, b.next[a])); }
        }
        if (corrupt && first) { out = !out; }
        first = false;
        std::vector<StateSet> next;
        for (std::size_t a = 0; a < letters; ++a) {
            StateSet boxed(preds);
            for (const auto& v : chi_good(families[a], preds)) { boxed.insert(static_cast<StateId>(box(v, phi))); }
            next.push_back(std::move(boxed));
        }
        std::uint64_t lower = logic(out, next);
        if (upper != lower) {
            std::string input = "|A|=" + std::to_string(letters) + ", |Phi|=" + std::to_string(phi) + ", argument of " +
                                std::to_string(members.size()) + " elements";
            report.failures.push_back({input, render_bits(upper, letters, phi), render_bits(lower, letters, phi)});
        }
    });
}

} // namespace

LawReport check_logic_morphism_diagram(LogicDiagram which, std::size_t max_phi, bool corrupt) {
    if (which == LogicDiagram::WeightedKappa) {
        auto r = check_weighted_kappa<BooleanSemiring>({false, true}, max_phi, 2, corrupt);
        r.law = "logic morphism WeightedKappa";
        return r;
    }
    LawReport report{"logic morphism " + diagram_name(which), 0, {}};
    for (std::size_t letters = 1; letters <= 2; ++letters) {
        for (std::size_t phi = 1; phi <= max_phi; ++phi) {
            if (which == LogicDiagram::AltKappa) {
                check_alt_kappa(letters, phi, corrupt, report);
            } else {
                check_tau(which == LogicDiagram::ConjunctiveTau, letters, phi, corrupt, report);
            }
        }
    }
    return report;
}

LawReport check_correctness(const Nfa& source, const SubsetResult& det, Branching mode, std::size_t depth) {
    LawReport report{std::string("correctness of ") +
                         (mode == Branching::Disjunctive ? "subset" : "conjunctive subset") + " determinization",
                     0, {}};
    detail::compare_tables(bt_nfa_trace_all(source, depth, mode),
                           detail::embedded_tables(det.machine, det.embed, depth), source.states, source.alphabet,
                           [](bool b) { return BooleanSemiring::to_string(b); }, report);
    return report;
}

LawReport check_correctness(const AlternatingAut& source, const AltNfaResult& det, std::size_t depth) {
    LawReport report{"correctness of the alternating translation", 0, {}};
    auto target = nfa_trace_all(det.nfa, depth);
    std::vector<LanguageTable<bool>> embedded;
    for (StateId d : det.embed) { embedded.push_back(target[d]); }
    detail::compare_tables(alt_trace_all(source, depth), embedded, source.states, source.alphabet,
                           [](bool b) { return BooleanSemiring::to_string(b); }, report);
    return report;
}

LawReport check_correctness(const Nfa& source, const CanonicalResult& det, std::size_t depth) {
    LawReport report{"correctness of canonical determinization", 0, {}};
    detail::compare_tables(nfa_trace_all(source, depth), detail::embedded_tables(det.machine, det.embed, depth),
                           source.states, source.alphabet, [](bool b) { return BooleanSemiring::to_string(b); },
                           report);
    return report;
}

} // namespace coaltrace

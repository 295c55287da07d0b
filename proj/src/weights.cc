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

#include "coaltrace/weights.hh"

#include <stdexcept>

namespace coaltrace {

namespace {

Natural parse_digits(std::string_view text) {
    if (text.empty()) { throw std::invalid_argument("empty number"); }
    for (char c : text) {
        if (c < '0' || c > '9') { throw std::invalid_argument("not a natural number: " + std::string(text)); }
    }
    return Natural(std::string(text));
}

} // namespace

BooleanSemiring::value_type BooleanSemiring::parse(std::string_view text) {
    if (text == "tt" || text == "true" || text == "1") { return true; }
    if (text == "ff" || text == "false" || text == "0") { return false; }
    throw std::invalid_argument("not a Boolean weight: " + std::string(text));
}

NaturalSemiring::value_type NaturalSemiring::parse(std::string_view text) {
    return parse_digits(text);
}

RationalSemiring::value_type RationalSemiring::parse(std::string_view text) {
    bool negative = false;
    if (!text.empty() && text.front() == '-') {
        negative = true;
        text.remove_prefix(1);
    }
    auto slash = text.find('/');
    Natural num = parse_digits(text.substr(0, slash));
    Natural den = 1;
    if (slash != std::string_view::npos) {
        den = parse_digits(text.substr(slash + 1));
        if (den == 0) { throw std::invalid_argument("zero denominator"); }
    }
    Rational q(num, den);
    return negative ? Rational(-q) : q;
}

std::string rational_fraction(const Rational& q) {
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

PartialProb::PartialProb(Rational value) : value_(std::move(value)) {
    if (value_ < 0 || value_ > 1) {
        throw std::invalid_argument("probability outside [0,1]: " + value_.str());
    }
}

std::optional<PartialProb> prob_add(const PartialProb& p, const PartialProb& q) {
    Rational sum = p.value() + q.value();
    if (sum > 1) { return std::nullopt; }
    return PartialProb(std::move(sum));
}

PartialProb prob_mul(const PartialProb& p, const PartialProb& q) {
    return PartialProb(p.value() * q.value());
}

std::optional<PartialProb> prob_sum(const std::vector<PartialProb>& terms) {
    PartialProb acc;
    for (const auto& t : terms) {
        auto next = prob_add(acc, t);
        if (!next) { return std::nullopt; }
        acc = *next;
    }
    return acc;
}

} // namespace coaltrace

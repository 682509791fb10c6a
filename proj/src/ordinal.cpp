#include "efeq/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>

namespace efeq {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw OrdinalError("ordinal coefficient overflow");
  }
  return a + b;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Ordinal parse() {
    skip_ws();
    if (at_end()) throw error("empty ordinal");
    std::vector<Ordinal::Term> terms;
    while (true) {
      Ordinal::Term term = parse_term();
      if (term.coefficient == 0) {
        if (!terms.empty() || !at_end_after_ws()) throw error("zero term inside a sum");
        return Ordinal();
      }
      terms.push_back(term);
      skip_ws();
      if (at_end()) break;
      expect('+');
      skip_ws();
    }
    return Ordinal::from_terms(std::move(terms));
  }

 private:
  Ordinal::Term parse_term() {
    if (peek() == 'w') {
      ++pos_;
      std::uint64_t exponent = 1;
      std::uint64_t coefficient = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        if (peek() == 'w') throw error("ordinals at or above w^w are not supported");
        exponent = parse_natural();
        skip_ws();
      }
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (peek() == 'w') throw error("ordinal multiplication is not supported");
        coefficient = parse_natural();
        if (coefficient == 0) throw error("zero coefficient");
      }
      return {exponent, coefficient};
    }
    return {0, parse_natural()};
  }

  std::uint64_t parse_natural() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw error("expected a natural number");
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc()) throw error("natural number out of range");
    return value;
  }

  void expect(char c) {
    if (peek() != c) throw error(std::string("expected '") + c + "'");
    ++pos_;
  }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool at_end() const { return pos_ >= text_.size(); }
  bool at_end_after_ws() {
    skip_ws();
    return at_end();
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  OrdinalError error(const std::string& what) const {
    return OrdinalError("cannot parse ordinal '" + std::string(text_) + "': " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal::Ordinal(std::uint64_t n) {
  if (n > 0) terms_.push_back({0, n});
}

Ordinal Ordinal::omega_power(std::uint64_t exponent, std::uint64_t coefficient) {
  Ordinal result;
  if (coefficient > 0) result.terms_.push_back({exponent, coefficient});
  return result;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) throw OrdinalError("ordinal term with zero coefficient");
    if (i > 0 && terms[i].exponent >= terms[i - 1].exponent) {
      throw OrdinalError("ordinal exponents must strictly decrease");
    }
  }
  Ordinal result;
  result.terms_ = std::move(terms);
  return result;
}

Ordinal Ordinal::parse(std::string_view text) { return Parser(text).parse(); }

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent == 0);
}

bool Ordinal::is_successor() const { return !terms_.empty() && terms_.back().exponent == 0; }

std::optional<std::uint64_t> Ordinal::as_natural() const {
  if (!is_finite()) return std::nullopt;
  return finite_part();
}

std::uint64_t Ordinal::finite_part() const {
  return is_successor() ? terms_.back().coefficient : 0;
}

Ordinal Ordinal::successor() const { return ord_add(*this, Ordinal(1)); }

Ordinal Ordinal::predecessor() const {
  if (!is_successor()) throw OrdinalError("predecessor of a non-successor ordinal " + to_string());
  Ordinal result = *this;
  if (--result.terms_.back().coefficient == 0) result.terms_.pop_back();
  return result;
}

Ordinal Ordinal::limit_part() const {
  Ordinal result = *this;
  if (result.is_successor()) result.terms_.pop_back();
  return result;
}

std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const Term& t : terms_) {
    if (!out.empty()) out += " + ";
    if (t.exponent == 0) {
      out += std::to_string(t.coefficient);
    } else if (t.exponent == 1) {
      out += "w*" + std::to_string(t.coefficient);
    } else {
      out += "w^" + std::to_string(t.exponent) + "*" + std::to_string(t.coefficient);
    }
  }
  return out;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (x.exponent != y.exponent) return x.exponent <=> y.exponent;
    if (x.coefficient != y.coefficient) return x.coefficient <=> y.coefficient;
  }
  return a.terms_.size() <=> b.terms_.size();
}

Comparison ord_compare(const Ordinal& a, const Ordinal& b) {
  const auto c = a <=> b;
  if (c < 0) return Comparison::less;
  if (c > 0) return Comparison::greater;
  return Comparison::equal;
}

Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const std::uint64_t lead = b.terms().front().exponent;
  std::vector<Ordinal::Term> terms;
  std::uint64_t carry = 0;
  for (const auto& t : a.terms()) {
    if (t.exponent > lead) {
      terms.push_back(t);
    } else if (t.exponent == lead) {
      carry = t.coefficient;
    }
  }
  bool first = true;
  for (const auto& t : b.terms()) {
    Ordinal::Term term = t;
    if (first) {
      term.coefficient = checked_add(term.coefficient, carry);
      first = false;
    }
    terms.push_back(term);
  }
  return Ordinal::from_terms(std::move(terms));
}

Ordinal ord_sup(std::span<const Ordinal> xs) {
  Ordinal best;
  for (const Ordinal& x : xs) {
    if (x > best) best = x;
  }
  return best;
}

}  // namespace efeq

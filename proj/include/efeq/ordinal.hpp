#ifndef EFEQ_ORDINAL_HPP
#define EFEQ_ORDINAL_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace efeq {

class OrdinalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordinal below w^w in Cantor normal form.
///
/// Stored as a list of (exponent, coefficient) terms with strictly
/// decreasing exponents and positive coefficients. The empty list is 0.
/// Coefficients are 64-bit; arithmetic that would overflow throws.
class Ordinal {
 public:
  struct Term {
    std::uint64_t exponent = 0;
    std::uint64_t coefficient = 0;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Ordinal() = default;
  Ordinal(std::uint64_t n);  // NOLINT: naturals embed implicitly

  static Ordinal omega_power(std::uint64_t exponent, std::uint64_t coefficient = 1);
  static Ordinal omega() { return omega_power(1); }
  /// Throws OrdinalError unless the terms are already in normal form.
  static Ordinal from_terms(std::vector<Term> terms);
  static Ordinal parse(std::string_view text);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  bool is_successor() const;
  bool is_limit() const { return !is_zero() && !is_successor(); }
  std::optional<std::uint64_t> as_natural() const;
  /// Natural part (the exponent-0 coefficient).
  std::uint64_t finite_part() const;

  /// a + 1
  Ordinal successor() const;
  /// For successors, the immediate predecessor; throws otherwise.
  Ordinal predecessor() const;
  /// The ordinal with its natural part removed (largest limit or 0 below *this).
  Ordinal limit_part() const;

  std::string to_string() const;

  friend bool operator==(const Ordinal&, const Ordinal&) = default;
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<Term> terms_;
};

enum class Comparison { less, equal, greater };

Comparison ord_compare(const Ordinal& a, const Ordinal& b);
Ordinal ord_add(const Ordinal& a, const Ordinal& b);
Ordinal ord_sup(std::span<const Ordinal> xs);

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return ord_add(a, b); }

}  // namespace efeq

#endif  // EFEQ_ORDINAL_HPP

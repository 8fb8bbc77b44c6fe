#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace perclab {

/// Edge-retention probability kept as the exact rational num/10^k parsed
/// from its decimal spelling. All peeling thresholds (4pd/5, 6pd/5, 3pd/5,
/// pd/5, pd/13) are compared in scaled integer arithmetic so that boundary
/// cases never depend on platform float rounding.
struct RetentionProb {
  uint64_t num = 0;
  uint64_t den = 1;  // always a power of ten
  std::string text;  // the decimal string as given

  bool is_zero() const { return num == 0; }
  bool is_one() const { return num == den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Parses "0.625", "1", ".5", "0.90" etc. At most 9 fractional digits;
/// value must lie in [0, 1].
inline RetentionProb parse_prob(const std::string& text) {
  RetentionProb p;
  p.text = text;
  size_t i = 0;
  uint64_t whole = 0;
  bool any_digit = false;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    whole = whole * 10 + static_cast<uint64_t>(text[i] - '0');
    if (whole > 1) throw std::invalid_argument("probability out of range: " + text);
    any_digit = true;
    ++i;
  }
  uint64_t frac = 0, den = 1;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      if (den >= 1000000000ULL)
        throw std::invalid_argument("probability has more than 9 decimals: " + text);
      frac = frac * 10 + static_cast<uint64_t>(text[i] - '0');
      den *= 10;
      any_digit = true;
      ++i;
    }
  }
  if (!any_digit || i != text.size())
    throw std::invalid_argument("malformed probability: " + text);
  p.num = whole * den + frac;
  p.den = den;
  if (p.num > p.den) throw std::invalid_argument("probability out of range: " + text);
  return p;
}

namespace detail {
using u128 = unsigned __int128;
}

/// deg < 4pd/5  (below the S_0 window)
inline bool below_s0_window(uint64_t deg, const RetentionProb& p, uint64_t d) {
  return detail::u128(deg) * 5 * p.den < detail::u128(4) * p.num * d;
}

/// deg > 6pd/5  (above the S_0 window)
inline bool above_s0_window(uint64_t deg, const RetentionProb& p, uint64_t d) {
  return detail::u128(deg) * 5 * p.den > detail::u128(6) * p.num * d;
}

inline bool in_s0_window(uint64_t deg, const RetentionProb& p, uint64_t d) {
  return !below_s0_window(deg, p, d) && !above_s0_window(deg, p, d);
}

/// deg < 3pd/5  (peeling threshold)
inline bool below_peel_threshold(uint64_t deg, const RetentionProb& p, uint64_t d) {
  return detail::u128(deg) * 5 * p.den < detail::u128(3) * p.num * d;
}

/// count >= pd/5  (edges into the removed set)
inline bool meets_fifth_pd(uint64_t count, const RetentionProb& p, uint64_t d) {
  return detail::u128(count) * 5 * p.den >= detail::u128(p.num) * d;
}

/// deg <= 6pd/5  (cap on a survivor's neighbors in OUT)
inline bool within_out_neighbor_cap(uint64_t deg, const RetentionProb& p, uint64_t d) {
  return detail::u128(deg) * 5 * p.den <= detail::u128(6) * p.num * d;
}

/// boundary/size >= pd/13, compared cross-multiplied.
inline bool meets_core_expansion(uint64_t boundary, uint64_t size,
                                 const RetentionProb& p, uint64_t d) {
  return detail::u128(boundary) * 13 * p.den >= detail::u128(p.num) * d * size;
}

}  // namespace perclab

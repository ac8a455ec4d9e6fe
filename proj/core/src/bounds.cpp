#include "nsplit/bounds.hpp"

#include <stdexcept>

namespace nsplit {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("product does not fit in int64");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("sum does not fit in int64");
  return r;
}

std::int64_t checked_pow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

void check_args(int d, int t) {
  if (d < 1) throw std::invalid_argument("dimension must be at least 1");
  if (t < 0) throw std::invalid_argument("cut budget must be nonnegative");
}

}  // namespace

std::int64_t f_bound(int d, int t) {
  check_args(d, t);
  if (t < 1) throw std::invalid_argument("cut budget must be at least 1");
  std::int64_t v = checked_pow(t + 4, d);
  v = checked_add(v, -checked_pow(t + 3, d));
  v = checked_add(v, checked_pow(t + 2, d));
  v = checked_add(v, -checked_pow(2, d));
  v = checked_add(v, checked_mul(d, t + 2));
  return checked_add(v, 3);
}

std::int64_t d_value(int d, int t) {
  check_args(d, t);
  std::int64_t sum = 0;
  std::int64_t binom = 1;  // C(d, i), updated incrementally
  for (int i = 1; i <= d; ++i) {
    binom = checked_mul(binom, d - i + 1) / i;
    std::int64_t term = checked_mul(binom, checked_pow(t + 2, i));
    term = checked_mul(term, checked_pow(2, d - i) - 1);
    sum = checked_add(sum, term);
  }
  return sum;
}

std::int64_t d_closed_form(int d, int t) {
  check_args(d, t);
  std::int64_t v = checked_pow(t + 4, d);
  v = checked_add(v, 1);
  v = checked_add(v, -checked_pow(t + 3, d));
  return checked_add(v, -checked_pow(2, d));
}

}  // namespace nsplit

#include "fadingnet/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fadingnet {

namespace {

// Shortest round-trip decimal digits of |x| plus its base-10 exponent,
// normalized so the value is 0.digits * 10^(exp10+1).
void shortest_digits(double x, std::string& digits, int& exp10) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::scientific);
  if (res.ec != std::errc())
    throw std::runtime_error("format_double: to_chars failed");
  // layout: d[.ddd]e±EE
  const std::string s(buf, res.ptr);
  const std::size_t epos = s.find('e');
  exp10 = std::stoi(s.substr(epos + 1));
  digits.clear();
  for (std::size_t j = 0; j < epos; ++j)
    if (s[j] != '.') digits.push_back(s[j]);
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
}

std::string render_fixed(const std::string& digits, int exp10) {
  // value = digits[0].digits[1..] * 10^exp10, exp10 in [-4, 5]
  std::string out;
  if (exp10 >= 0) {
    const auto int_len = static_cast<std::size_t>(exp10) + 1;
    if (digits.size() <= int_len) {
      out = digits + std::string(int_len - digits.size(), '0');
    } else {
      out = digits.substr(0, int_len) + "." + digits.substr(int_len);
    }
  } else {
    out = "0." + std::string(static_cast<std::size_t>(-exp10) - 1, '0') + digits;
  }
  return out;
}

std::string render_scientific(const std::string& digits, int exp10) {
  std::string out(1, digits[0]);
  if (digits.size() > 1) out += "." + digits.substr(1);
  char tail[16];
  std::snprintf(tail, sizeof(tail), "e%+03d", exp10);
  return out + tail;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";

  const bool neg = x < 0.0;
  std::string digits;
  int exp10 = 0;
  shortest_digits(neg ? -x : x, digits, exp10);

  const double ax = neg ? -x : x;
  std::string body = (ax >= 1e-4 && ax < 1e6) ? render_fixed(digits, exp10)
                                              : render_scientific(digits, exp10);
  return neg ? "-" + body : body;
}

std::string format_u64(std::uint64_t v) { return std::to_string(v); }

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t j = 0; j < cells.size(); ++j) {
    if (j) line += ',';
    line += cells[j];
  }
  line += '\n';
  return line;
}

}  // namespace fadingnet

// Copyright 2026 The Forge Authors
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

#include "forge/rational.hpp"

#include <cctype>
#include <numeric>

#include "forge/errors.hpp"

namespace forge {

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw InputError("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  std::int64_t g = std::gcd(n, d);
  if (g == 0) g = 1;
  num_ = n / g;
  den_ = d / g;
}

namespace {

std::int64_t parse_int(const std::string& s, const std::string& whole) {
  if (s.empty()) throw InputError("malformed rational '" + whole + "'");
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw InputError("malformed rational '" + whole + "'");
  for (size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) throw InputError("malformed rational '" + whole + "'");
  }
  try {
    return std::stoll(s);
  } catch (const std::exception&) {
    throw InputError("rational out of range '" + whole + "'");
  }
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_int(text, text));
  std::string ip = text.substr(0, dot), fp = text.substr(dot + 1);
  if (fp.empty() || fp.size() > 15) throw InputError("malformed rational '" + text + "'");
  bool neg = !ip.empty() && ip[0] == '-';
  if (ip.empty() || ip == "-" || ip == "+") ip += "0";
  std::int64_t scale = 1;
  for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
  std::int64_t whole = parse_int(ip, text);
  std::int64_t frac = parse_int(fp, text);
  std::int64_t mag = (whole < 0 ? -whole : whole) * scale + frac;
  return Rational(neg ? -mag : mag, scale);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  __int128 l = static_cast<__int128>(num_) * o.den_;
  __int128 r = static_cast<__int128>(o.num_) * den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace forge

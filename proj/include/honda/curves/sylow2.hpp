#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "honda/report.hpp"

namespace honda {

/// 2x2 matrix over F_3, entries in {0,1,2}, row major.
using Mat3 = std::array<int, 4>;

namespace sylow_detail {

inline Mat3 mul(const Mat3& a, const Mat3& b) {
  return {(a[0] * b[0] + a[1] * b[2]) % 3, (a[0] * b[1] + a[1] * b[3]) % 3, (a[2] * b[0] + a[3] * b[2]) % 3,
          (a[2] * b[1] + a[3] * b[3]) % 3};
}

inline int det(const Mat3& a) { return ((a[0] * a[3] - a[1] * a[2]) % 3 + 3) % 3; }

inline Mat3 identity() { return {1, 0, 0, 1}; }

inline Mat3 power(const Mat3& a, int n) {
  Mat3 r = identity();
  for (int i = 0; i < n; ++i) r = mul(r, a);
  return r;
}

inline int order(const Mat3& a) {
  Mat3 r = a;
  for (int n = 1; n <= 48; ++n) {
    if (r == identity()) return n;
    r = mul(r, a);
  }
  return 0;
}

inline std::set<Mat3> generate(const std::vector<Mat3>& gens) {
  std::set<Mat3> g{identity()};
  std::vector<Mat3> frontier{identity()};
  while (!frontier.empty()) {
    std::vector<Mat3> next;
    for (const auto& x : frontier)
      for (const auto& s : gens) {
        Mat3 y = mul(x, s);
        if (g.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return g;
}

inline std::string str(const Mat3& a) {
  auto e = [](int v) { return std::to_string(v == 2 ? -1 : v); };
  return "[[" + e(a[0]) + "," + e(a[1]) + "],[" + e(a[2]) + "," + e(a[3]) + "]]";
}

}  // namespace sylow_detail

/// The 2-Sylow subgroup of GL_2(F_3) generated by c = diag(1,-1) and
/// tau = [[1,1],[-1,1]], and its index-two subgroup <tau^2, c tau> in SL_2(F_3).
inline VerificationReport sylow2_check() {
  using namespace sylow_detail;
  VerificationReport rep;
  rep.id = "sylow2";
  rep.claim = "<c, tau> is a 2-Sylow subgroup of GL_2(F_3) with <tau^2, c tau> non-abelian in SL_2(F_3)";
  const Mat3 c{1, 0, 0, 2}, tau{1, 1, 2, 1};
  rep.inputs = {{"c", str(c)}, {"tau", str(tau)}};
  rep.expect("ord(tau)", order(tau), 8, source::kReference);
  rep.expect("ord(c)", order(c), 2, source::kReference);
  rep.expect_true("c tau = tau^3 c", mul(c, tau) == mul(power(tau, 3), c), source::kReference);
  auto G = generate({c, tau});
  rep.expect("|<c, tau>|", G.size(), 16u, source::kReference);
  // |GL_2(F_3)| = 48 = 16 * 3.
  rep.expect("|GL_2(F_3)| / |<c, tau>| is odd", (48 / G.size()) % 2, 1u, source::kIdentity);
  Mat3 t2 = power(tau, 2), ct = mul(c, tau);
  auto H = generate({t2, ct});
  bool in_sl2 = true;
  for (const auto& h : H) in_sl2 = in_sl2 && det(h) == 1;
  rep.expect_true("<tau^2, c tau> lies in SL_2(F_3)", in_sl2, source::kReference);
  rep.expect_true("<tau^2, c tau> is non-abelian", mul(t2, ct) != mul(ct, t2), source::kReference);
  rep.expect("|<tau^2, c tau>|", H.size(), 8u, source::kOracle);
  rep.computed = {{"order_tau", order(tau)}, {"order_group", G.size()}, {"order_subgroup", H.size()}};
  return rep;
}

}  // namespace honda

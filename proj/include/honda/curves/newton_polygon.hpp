#pragma once

#include <climits>
#include <string>
#include <utility>
#include <vector>

#include "honda/curves/formal_group.hpp"
#include "honda/report.hpp"

namespace honda {

/// Points (i, v(c_i)) for the nonzero coefficients and the vertices of their
/// lower convex hull, left to right. Along the hull the index strictly
/// increases and the slopes strictly increase (they become less negative).
struct NewtonPolygon {
  std::vector<std::pair<int, int>> points;
  std::vector<std::pair<int, int>> vertices;

  static NewtonPolygon from_points(std::vector<std::pair<int, int>> pts) {
    NewtonPolygon np;
    np.points = std::move(pts);
    for (const auto& pt : np.points) {
      // Cross product test: drop the last vertex while it is not strictly below the chord.
      while (np.vertices.size() >= 2) {
        auto [x1, y1] = np.vertices[np.vertices.size() - 2];
        auto [x2, y2] = np.vertices.back();
        long cross = static_cast<long>(x2 - x1) * (pt.second - y1) - static_cast<long>(y2 - y1) * (pt.first - x1);
        if (cross <= 0) np.vertices.pop_back();
        else break;
      }
      np.vertices.push_back(pt);
    }
    return np;
  }

  /// Whether (x, y) lies strictly below the segment from a to b (a.first < x < b.first).
  static bool strictly_below(std::pair<int, int> pt, std::pair<int, int> a, std::pair<int, int> b) {
    // y < a.y + (b.y - a.y)(x - a.x)/(b.x - a.x)
    long lhs = static_cast<long>(pt.second - a.second) * (b.first - a.first);
    long rhs = static_cast<long>(b.second - a.second) * (pt.first - a.first);
    return lhs < rhs;
  }

  json to_json() const {
    json pts = json::array(), vs = json::array();
    for (auto [i, v] : points) pts.push_back({i, v});
    for (auto [i, v] : vertices) vs.push_back({i, v});
    return {{"points", pts}, {"vertices", vs}};
  }
};

/// Newton polygon of c_1 t + ... + c_n t^n at the prime (indices 1..n, zero coefficients skipped).
inline NewtonPolygon newton_polygon(const FormalSeries& f, const PrimeSpec& P, int n) {
  if (n > f.precision()) throw PrecisionTooLow("series known only to t^" + std::to_string(f.precision()));
  std::vector<std::pair<int, int>> pts;
  for (int i = 1; i <= n; ++i)
    if (!f[i].is_zero()) pts.emplace_back(i, P.valuation(f[i]));
  return NewtonPolygon::from_points(std::move(pts));
}

enum class InertiaType { Level2, Level1Pair };

inline std::string to_string(InertiaType t) { return t == InertiaType::Level2 ? "Level2" : "Level1Pair"; }

struct InertiaResult {
  InertiaType type = InertiaType::Level2;
  NewtonPolygon polygon;
  int e = 1;
  int p = 0;
  VerificationReport report;
};

/// Tame inertia on E[p] at a prime of good supersingular reduction with
/// ramification index e over Q_p, read off the Newton polygon of [p](t) on
/// t^1..t^{p^2}: fundamental characters of level 2 exactly when the hull is the
/// single segment (1, e)-(p^2, 0), two level-one characters otherwise.
/// Only p = 3 is enabled unless allow_general_p is set.
inline InertiaResult tame_inertia_type(const Curve& E, const PrimeSpec& P, bool allow_general_p = false) {
  int p = static_cast<int>(P.p);
  if (p != 3 && !allow_general_p) throw InvalidArgument("tame inertia classification is enabled for p = 3 only");
  InertiaResult res;
  res.p = p;
  res.e = P.e();
  VerificationReport& rep = res.report;
  rep.id = "tame-inertia";
  rep.claim = "tame inertia type of E[p] from the Newton polygon of [p](t)";
  rep.inputs = {{"curve", E.to_string()}, {"prime", P.to_string()}};
  if (reduction_type(E, P) != ReductionType::Good) throw BadReduction("no good reduction at " + P.to_string());
  bool ss = is_supersingular(E, P);
  rep.expect_true("good supersingular reduction", ss, source::kReference);
  if (!ss) throw InvalidArgument("reduction is ordinary");
  int top = p * p;
  FormalSeries mp = formal_mult_p(E, p);
  res.polygon = newton_polygon(mp, P, top);
  const auto& V = res.polygon.vertices;
  rep.expect("v(c_1) = v(p) = e", P.valuation(mp[1]), res.e, source::kIdentity);
  rep.expect("v(c_{p^2}) = 0", mp[top].is_zero() ? INT_MAX : P.valuation(mp[top]), 0, source::kIdentity);
  bool single = V.size() == 2 && V.front() == std::make_pair(1, res.e) && V.back() == std::make_pair(top, 0);
  res.type = single ? InertiaType::Level2 : InertiaType::Level1Pair;
  if (res.e == 1) rep.expect("e = 1 gives level 2", to_string(res.type), "Level2", source::kIdentity);
  rep.computed = {{"type", to_string(res.type)}, {"newton_polygon", res.polygon.to_json()}};
  return res;
}

}  // namespace honda

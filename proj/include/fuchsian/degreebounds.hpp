// Why totally real base fields of degree 7 or more cannot occur, and the
// discriminant ceiling for degree 6: the coarea of the unit group over a
// field of discriminant d and degree n is at least 8 pi d^{3/2} / (4 pi^2)^n
// (zeta and the ramification product are >= 1), while a group containing a
// genus-two surface group with finite index has coarea at most 4 pi.

#pragma once

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace fuchsian {

struct DegreeBoundRow {
  int degree = 0;
  double min_disc = 0.0;     // least totally real discriminant: reference value, or analytic bound
  bool from_odlyzko = false; // true when min_disc is the analytic lower bound 2.439e-4 * 29.099^n
  double min_coarea = 0.0;   // 8 pi min_disc^{3/2} / (4 pi^2)^degree
  bool excluded = false;     // min_coarea > 4 pi
};

struct DegreeBoundReport {
  std::vector<DegreeBoundRow> rows;  // degrees 7, 8, 9
  int max_degree = 0;                // degrees above this are excluded analytically
  double deg7_min_coarea = 0.0;      // ~15.19251
  double deg8_min_coarea = 0.0;      // ~20.20362
  double deg6_disc_bound_raw = 0.0;  // (3 (4 pi^2)^6 / 8)^{2/3} ~ 1263164.15
  long deg6_disc_bound = 0;          // strict: admissible sextic discriminants are < this

  std::string describe() const {
    std::ostringstream os;
    os.precision(6);
    for (const DegreeBoundRow& r : rows) {
      os << "degree " << r.degree << ": least discriminant "
         << (r.from_odlyzko ? ">= " : "") << r.min_disc
         << (r.from_odlyzko ? " (analytic bound)" : " (reference table)")
         << " forces coarea >= " << r.min_coarea
         << (r.excluded ? " > 4*pi: excluded" : "") << "\n";
    }
    os << "the analytic bound grows by 29.099 per degree against an allowance of "
       << std::pow(4.0 * std::numbers::pi * std::numbers::pi, 2.0 / 3.0)
       << ", so every degree above " << max_degree << " is excluded\n";
    os << "degree 6: finite ramification is forced nonempty, so zeta * prod(N(P)-1) >= 4/3 "
       << "and the discriminant is below " << deg6_disc_bound
       << " (raw bound " << deg6_disc_bound_raw << ")\n";
    return os.str();
  }
};

inline DegreeBoundReport degree_bound_report() {
  const double pi = std::numbers::pi;
  const double four_pi_sq = 4.0 * pi * pi;

  auto coarea_floor = [&](double disc, int n) {
    return 8.0 * pi * std::pow(disc, 1.5) / std::pow(four_pi_sq, static_cast<double>(n));
  };

  DegreeBoundReport rep;

  // Least totally real field discriminants in degrees 7 and 8 (reference
  // table values); degree 9 and beyond use the analytic lower bound, whose
  // growth factor 29.099 per degree outpaces the allowance (4 pi^2)^{2/3}.
  const double kMinDisc7 = 20134393.0;
  const double kMinDisc8 = 282300416.0;
  const double kOdlyzko9 = 2.439e-4 * std::pow(29.099, 9.0);

  DegreeBoundRow r7{7, kMinDisc7, false, coarea_floor(kMinDisc7, 7), false};
  r7.excluded = r7.min_coarea > 4.0 * pi;
  DegreeBoundRow r8{8, kMinDisc8, false, coarea_floor(kMinDisc8, 8), false};
  r8.excluded = r8.min_coarea > 4.0 * pi;
  DegreeBoundRow r9{9, kOdlyzko9, true, coarea_floor(kOdlyzko9, 9), false};
  r9.excluded = r9.min_coarea > 4.0 * pi;
  rep.rows = {r7, r8, r9};

  rep.max_degree = 8;
  rep.deg7_min_coarea = r7.min_coarea;
  rep.deg8_min_coarea = r8.min_coarea;

  // Degree 6: the ramification parity forces at least one finite ramified
  // prime, and zeta_K(2) * (N(P) - 1) >= (1 - N^{-2})^{-1} (N - 1) attains
  // its minimum 4/3 at norm 2, so 8 pi d^{3/2} (4/3) / (4 pi^2)^6 <= 4 pi.
  rep.deg6_disc_bound_raw = std::pow(3.0 * std::pow(four_pi_sq, 6.0) / 8.0, 2.0 / 3.0);
  rep.deg6_disc_bound = static_cast<long>(std::floor(rep.deg6_disc_bound_raw)) + 1;
  return rep;
}

}  // namespace fuchsian

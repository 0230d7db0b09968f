#include "skycell/exclusion.hpp"

#include <cmath>
#include <stdexcept>

#include "skycell/model.hpp"

namespace skycell {

namespace {

enum class Side { sidelobe, mainlobe };

struct BoundRow {
  double rho;
  double kappa;
  Side side;
};

void require_drone_above(const Scenario& sc, const char* where) {
  if (!sc.is_drone() || !(sc.delta_h() > 0.0)) {
    throw std::domain_error(std::string(where) + ": closed forms need a drone above the BSs");
  }
}

std::array<BoundRow, 12> bound_rows(const Scenario& sc) {
  const double gm = sc.g_main();
  const double gs = sc.g_side();
  const double al = sc.path_gain_ref(LinkType::los);
  const double an = sc.path_gain_ref(LinkType::nlos);
  const double el = sc.alpha(LinkType::los);
  const double en = sc.alpha(LinkType::nlos);
  const double los_to_nlos = el / en;
  const double nlos_to_los = en / el;

  const double rho1 = std::pow(gm / gs, 2.0 / el);
  const double rho2 = std::pow(an / al, 2.0 / en);
  const double rho7 = std::pow(al / an, 2.0 / el);
  const double rho9 = std::pow(gm / gs, 2.0 / en);

  // Serving LoS: z1..z6, serving NLoS: z7..z12.
  return {{
      {rho1, 1.0, Side::mainlobe},
      {rho2, los_to_nlos, Side::sidelobe},
      {std::pow(an * gm / (al * gs), 2.0 / en), los_to_nlos, Side::mainlobe},
      {1.0 / rho1, 1.0, Side::sidelobe},
      {std::pow(an * gs / (al * gm), 2.0 / en), los_to_nlos, Side::sidelobe},
      {rho2, los_to_nlos, Side::mainlobe},
      {rho7, nlos_to_los, Side::sidelobe},
      {std::pow(al * gm / (an * gs), 2.0 / el), nlos_to_los, Side::mainlobe},
      {rho9, 1.0, Side::mainlobe},
      {std::pow(al * gs / (an * gm), 2.0 / el), nlos_to_los, Side::sidelobe},
      {rho7, nlos_to_los, Side::mainlobe},
      {1.0 / rho9, 1.0, Side::sidelobe},
  }};
}

// [0, z] for a sidelobe bound, [r0, z] for a mainlobe bound.
void push_bound(std::vector<Interval>& out, const std::optional<double>& z, Side side, double r0) {
  if (!z) return;
  out.push_back(side == Side::sidelobe ? Interval{0.0, *z} : Interval{r0, *z});
}

}  // namespace

ServingContext make_serving(double r_s, LinkType link, const Scenario& sc) {
  const double g = bs_gain(r_s, sc);
  if (!(g > 0.0)) throw std::domain_error("make_serving: BS outside the user antenna cone");
  return {r_s, link, lobe_at(r_s, sc), sc.p_tx() * g * path_loss(r_s, link, sc)};
}

ZValues z_values(double r_s, const Scenario& sc) {
  require_drone_above(sc, "z_values");
  const double dh2 = sc.delta_h() * sc.delta_h();
  const double serving_d2 = r_s * r_s + dh2;
  const double r0 = mainlobe_onset(sc);
  const double r_max = sc.r_max();
  const double side_top = std::min(r0, r_max);
  const bool has_mainlobe = r0 < r_max;

  ZValues z;
  const auto rows = bound_rows(sc);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    // Clamp in the squared domain, then take the root.
    const double sq = row.rho * std::pow(serving_d2, row.kappa) - dh2;
    if (row.side == Side::sidelobe) {
      if (sq >= 0.0) z[i] = std::sqrt(std::min(sq, side_top * side_top));
    } else if (has_mainlobe && sq >= r0 * r0) {
      z[i] = std::sqrt(std::min(sq, r_max * r_max));
    }
  }
  return z;
}

StrongerSets stronger_sets(const ServingContext& serving, const Scenario& sc) {
  require_drone_above(sc, "stronger_sets");
  const ZValues z = z_values(serving.r_s, sc);
  const double r0 = mainlobe_onset(sc);
  const double r_s = serving.r_s;
  const bool side = serving.lobe == Lobe::sidelobe;

  std::vector<Interval> los;
  std::vector<Interval> nlos;
  if (serving.link == LinkType::los) {
    if (side) {
      los.push_back({0.0, r_s});
      push_bound(los, z[0], Side::mainlobe, r0);
      push_bound(nlos, z[1], Side::sidelobe, r0);
      push_bound(nlos, z[2], Side::mainlobe, r0);
    } else {
      push_bound(los, z[3], Side::sidelobe, r0);
      los.push_back({r0, r_s});
      push_bound(nlos, z[4], Side::sidelobe, r0);
      push_bound(nlos, z[5], Side::mainlobe, r0);
    }
  } else {
    if (side) {
      push_bound(los, z[6], Side::sidelobe, r0);
      push_bound(los, z[7], Side::mainlobe, r0);
      nlos.push_back({0.0, r_s});
      push_bound(nlos, z[8], Side::mainlobe, r0);
    } else {
      push_bound(los, z[9], Side::sidelobe, r0);
      push_bound(los, z[10], Side::mainlobe, r0);
      push_bound(nlos, z[11], Side::sidelobe, r0);
      nlos.push_back({r0, r_s});
    }
  }
  const Interval window{0.0, sc.r_max()};
  return {RegionSet(std::move(los)).intersect(window), RegionSet(std::move(nlos)).intersect(window),
          serving.link, r_s};
}

StrongerSets stronger_sets_general(const ServingContext& serving, const Scenario& sc) {
  const RegionSet main = mainlobe_region(sc);
  const RegionSet side = main.complement(sc.r_max());
  const double g_srv = serving.lobe == Lobe::mainlobe ? sc.g_main() : sc.g_side();
  const double dh2 = sc.delta_h() * sc.delta_h();
  const LinkType v = serving.link;
  const double level =
      g_srv * sc.path_gain_ref(v) * std::pow(serving.r_s * serving.r_s + dh2, -sc.alpha(v) / 2.0);

  auto solve = [&](LinkType xi) {
    std::vector<Interval> out;
    for (const auto& [region, g] : {std::pair{&main, sc.g_main()}, std::pair{&side, sc.g_side()}}) {
      if (region->empty()) continue;
      double reach_sq;
      if (xi == v && g == g_srv) {
        reach_sq = serving.r_s * serving.r_s;
      } else {
        // g A_xi d^(-alpha_xi) >= level  <=>  d^2 <= (g A_xi / level)^(2 / alpha_xi)
        reach_sq = std::pow(g * sc.path_gain_ref(xi) / level, 2.0 / sc.alpha(xi)) - dh2;
      }
      if (reach_sq < 0.0) continue;
      const double reach = std::sqrt(reach_sq);
      for (const auto& iv : region->intervals()) {
        if (reach >= iv.lo) out.push_back({iv.lo, std::min(iv.hi, reach)});
      }
    }
    return RegionSet(std::move(out));
  };
  return {solve(LinkType::los), solve(LinkType::nlos), v, serving.r_s};
}

StrongerSets exclusion_sets(const ServingContext& serving, const Scenario& sc) {
  if (sc.is_drone()) return stronger_sets(serving, sc);
  return stronger_sets_general(serving, sc);
}

}  // namespace skycell

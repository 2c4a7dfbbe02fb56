#pragma once

#include <vector>

#include "wva/config.hpp"

namespace wva {

struct GridPoint {
    int n;
    double phi;
    double g;
    double r;
    double gamma;
};

/// The property-test grid: n in {1,2,4,8}, phi in {0.01,0.05,0.1},
/// g in {1e-5,1e-4,1e-3}, r in {0,0.3,0.6,0.9,0.99}, gamma in {0,0.05,0.1},
/// constrained to n*phi < 1 (540 points).
inline std::vector<GridPoint> standard_grid() {
    static const int ns[] = {1, 2, 4, 8};
    static const double phis[] = {0.01, 0.05, 0.1};
    static const double gs[] = {1e-5, 1e-4, 1e-3};
    static const double rs[] = {0.0, 0.3, 0.6, 0.9, 0.99};
    static const double gammas[] = {0.0, 0.05, 0.1};
    std::vector<GridPoint> grid;
    grid.reserve(540);
    for (int n : ns)
        for (double phi : phis) {
            if (n * phi >= 1.0) continue;
            for (double g : gs)
                for (double r : rs)
                    for (double gamma : gammas) grid.push_back({n, phi, g, r, gamma});
        }
    return grid;
}

inline ExperimentConfig config_at(const GridPoint& pt, double q_keep_to_discard = 0.0,
                                  double q_discard_to_keep = 0.0) {
    ConfigValues v;
    v.n = pt.n;
    v.phi = pt.phi;
    v.g = pt.g;
    v.r = pt.r;
    v.gamma = pt.gamma;
    v.q_keep_to_discard = q_keep_to_discard;
    v.q_discard_to_keep = q_discard_to_keep;
    return make_config(v);
}

}  // namespace wva

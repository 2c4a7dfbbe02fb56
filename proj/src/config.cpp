#include "wva/config.hpp"

#include <cmath>

#include "wva/errors.hpp"

namespace wva {

namespace {

void require_finite(double value, const char* field) {
    if (!std::isfinite(value)) throw ConfigError(std::string(field) + " must be finite");
}

}  // namespace

ExperimentConfig make_config(const ConfigValues& v) {
    if (v.n < 1) throw ConfigError("n must be >= 1");
    require_finite(v.g, "g");
    require_finite(v.phi, "phi");
    require_finite(v.r, "r");
    require_finite(v.gamma, "gamma");
    require_finite(v.q_keep_to_discard, "q_keep_to_discard");
    require_finite(v.q_discard_to_keep, "q_discard_to_keep");
    if (v.r < 0.0) throw ConfigError("r must be >= 0");
    if (v.r >= 1.0) throw ConfigError("r must be < 1");
    if (v.gamma < 0.0 || v.gamma > 1.0) throw ConfigError("gamma out of [0,1]");
    if (v.q_keep_to_discard < 0.0 || v.q_keep_to_discard > 1.0)
        throw ConfigError("q_keep_to_discard out of [0,1]");
    if (v.q_discard_to_keep < 0.0 || v.q_discard_to_keep > 1.0)
        throw ConfigError("q_discard_to_keep out of [0,1]");

    ExperimentConfig cfg{};
    cfg.n = v.n;
    cfg.g = v.g;
    cfg.phi = v.phi;
    cfg.r = v.r;
    cfg.gamma = v.gamma;
    cfg.q_keep_to_discard = v.q_keep_to_discard;
    cfg.q_discard_to_keep = v.q_discard_to_keep;
    cfg.p = std::sqrt(1.0 - v.r * v.r);
    cfg.L = std::sqrt(1.0 - v.gamma);
    return cfg;
}

ConfigValues values_of(const ExperimentConfig& cfg) {
    ConfigValues v;
    v.n = cfg.n;
    v.g = cfg.g;
    v.phi = cfg.phi;
    v.r = cfg.r;
    v.gamma = cfg.gamma;
    v.q_keep_to_discard = cfg.q_keep_to_discard;
    v.q_discard_to_keep = cfg.q_discard_to_keep;
    return v;
}

ExperimentConfig with_g(const ExperimentConfig& cfg, double g) {
    ConfigValues v = values_of(cfg);
    v.g = g;
    return make_config(v);
}

ExperimentConfig with_readout(const ExperimentConfig& cfg, double q_keep_to_discard,
                              double q_discard_to_keep) {
    ConfigValues v = values_of(cfg);
    v.q_keep_to_discard = q_keep_to_discard;
    v.q_discard_to_keep = q_discard_to_keep;
    return make_config(v);
}

}  // namespace wva

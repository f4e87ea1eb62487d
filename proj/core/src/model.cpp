#include "lsv/model.hpp"

#include <cmath>
#include <stdexcept>

namespace lsv {

void VolOfVolSpec::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("vol_of_vol: sigma must be > 0");
    if (auto* m = std::get_if<MeanRevertingDrift>(&drift)) {
        if (!(m->a > 0.0) || !(m->b > 0.0))
            throw std::invalid_argument("vol_of_vol: mean-reverting drift requires a > 0 and b > 0");
    } else if (auto* c = std::get_if<ConstantDrift>(&drift)) {
        if (!std::isfinite(c->mu)) throw std::invalid_argument("vol_of_vol: non-finite drift mu");
    }
}

double VolOfVolSpec::sigma_of(double v) const {
    return kind == VolOfVolKind::Lognormal ? sigma : sigma / std::sqrt(v);
}

void LsvModel::validate() const {
    if (!(s0 > 0.0) || !std::isfinite(s0)) throw std::invalid_argument("model: s0 must be > 0");
    if (!(v0 > 0.0) || !std::isfinite(v0)) throw std::invalid_argument("model: v0 must be > 0");
    if (!(std::abs(rho) <= 1.0)) throw std::invalid_argument("model: |rho| must be <= 1");
    if (!std::isfinite(r) || !std::isfinite(q)) throw std::invalid_argument("model: non-finite r or q");
    lsv::validate(local_vol);
    vol_of_vol.validate();
}

double vix_spot(const LsvModel& model) {
    return eta_eval(model.local_vol, model.s0, model.s0) * std::sqrt(model.v0);
}

bool check_moment_condition(double rho, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("check_moment_condition: p must be > 1");
    return rho < -std::sqrt((p - 1.0) / p);
}

LsvModel table1_model(double rho) {
    LsvModel m;
    m.s0 = 1.0;
    m.v0 = 0.1;
    m.rho = rho;
    m.local_vol = TanhLocalVol{1.0, -0.5, 0.0};
    m.vol_of_vol = VolOfVolSpec{VolOfVolKind::Lognormal, 2.0, ZeroDrift{}};
    return m;
}

}  // namespace lsv

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "lsv/model.hpp"

namespace lsv {

// Model configuration document:
//   { "s0": 1, "v0": 0.1, "rho": -0.7, "r": 0, "q": 0,
//     "local_vol": {"kind": "tanh", "f0": 1, "f1": -0.5, "x0": 0},
//     "vol_of_vol": {"kind": "lognormal", "sigma": 2,
//                    "drift": {"kind": "zero"}} }
// local_vol kinds: tanh | taylor_log {"eta": [e0, e1, e2, e3]} | constant {"value"}
// vol_of_vol kinds: lognormal | square_root
// drift kinds: zero | constant {"mu"} | mean_reverting {"a", "b"}

LsvModel model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const LsvModel& model);
LsvModel load_model_file(const std::string& path);

}  // namespace lsv

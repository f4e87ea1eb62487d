#include "lsv/model_json.hpp"

#include <fstream>
#include <stdexcept>

namespace lsv {

namespace {

using nlohmann::json;

double number(const json& obj, const char* key, double fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number()) throw std::invalid_argument(std::string("model config: '") + key + "' must be a number");
    return it->get<double>();
}

double required(const json& obj, const char* key) {
    if (!obj.contains(key)) throw std::invalid_argument(std::string("model config: missing '") + key + "'");
    return number(obj, key, 0.0);
}

std::string kind_of(const json& obj, const char* where) {
    if (!obj.is_object() || !obj.contains("kind") || !obj["kind"].is_string())
        throw std::invalid_argument(std::string("model config: ") + where + " needs a string 'kind'");
    return obj["kind"].get<std::string>();
}

LocalVolSpec local_vol_from_json(const json& j) {
    std::string kind = kind_of(j, "local_vol");
    if (kind == "tanh") return TanhLocalVol{required(j, "f0"), required(j, "f1"), number(j, "x0", 0.0)};
    if (kind == "constant") return ConstantLocalVol{number(j, "value", 1.0)};
    if (kind == "taylor_log") {
        TaylorLogLocalVol t;
        t.eta = {0.0, 0.0, 0.0, 0.0};
        const json& e = j.at("eta");
        if (!e.is_array() || e.empty() || e.size() > 4)
            throw std::invalid_argument("model config: taylor_log 'eta' must hold 1..4 numbers");
        for (std::size_t i = 0; i < e.size(); ++i) t.eta[i] = e[i].get<double>();
        return t;
    }
    throw std::invalid_argument("model config: unknown local_vol kind '" + kind + "'");
}

VarianceDrift drift_from_json(const json& j) {
    std::string kind = kind_of(j, "drift");
    if (kind == "zero") return ZeroDrift{};
    if (kind == "constant") return ConstantDrift{required(j, "mu")};
    if (kind == "mean_reverting") return MeanRevertingDrift{required(j, "a"), required(j, "b")};
    throw std::invalid_argument("model config: unknown drift kind '" + kind + "'");
}

VolOfVolSpec vol_of_vol_from_json(const json& j) {
    std::string kind = kind_of(j, "vol_of_vol");
    VolOfVolSpec v;
    if (kind == "lognormal")
        v.kind = VolOfVolKind::Lognormal;
    else if (kind == "square_root")
        v.kind = VolOfVolKind::SquareRoot;
    else
        throw std::invalid_argument("model config: unknown vol_of_vol kind '" + kind + "'");
    v.sigma = required(j, "sigma");
    v.drift = j.contains("drift") ? drift_from_json(j["drift"]) : VarianceDrift{ZeroDrift{}};
    return v;
}

}  // namespace

LsvModel model_from_json(const json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("model config: top level must be an object");
    LsvModel m;
    m.s0 = required(doc, "s0");
    m.v0 = required(doc, "v0");
    m.rho = number(doc, "rho", 0.0);
    m.r = number(doc, "r", 0.0);
    m.q = number(doc, "q", 0.0);
    if (!doc.contains("local_vol")) throw std::invalid_argument("model config: missing 'local_vol'");
    if (!doc.contains("vol_of_vol")) throw std::invalid_argument("model config: missing 'vol_of_vol'");
    m.local_vol = local_vol_from_json(doc["local_vol"]);
    m.vol_of_vol = vol_of_vol_from_json(doc["vol_of_vol"]);
    m.validate();
    return m;
}

json model_to_json(const LsvModel& m) {
    json lv;
    if (auto* t = std::get_if<TanhLocalVol>(&m.local_vol))
        lv = {{"kind", "tanh"}, {"f0", t->f0}, {"f1", t->f1}, {"x0", t->x0}};
    else if (auto* p = std::get_if<TaylorLogLocalVol>(&m.local_vol))
        lv = {{"kind", "taylor_log"}, {"eta", p->eta}};
    else
        lv = {{"kind", "constant"}, {"value", std::get<ConstantLocalVol>(m.local_vol).value}};

    json drift;
    if (auto* c = std::get_if<ConstantDrift>(&m.vol_of_vol.drift))
        drift = {{"kind", "constant"}, {"mu", c->mu}};
    else if (auto* mr = std::get_if<MeanRevertingDrift>(&m.vol_of_vol.drift))
        drift = {{"kind", "mean_reverting"}, {"a", mr->a}, {"b", mr->b}};
    else
        drift = {{"kind", "zero"}};

    return {
        {"s0", m.s0},
        {"v0", m.v0},
        {"rho", m.rho},
        {"r", m.r},
        {"q", m.q},
        {"local_vol", lv},
        {"vol_of_vol",
         {{"kind", m.vol_of_vol.kind == VolOfVolKind::Lognormal ? "lognormal" : "square_root"},
          {"sigma", m.vol_of_vol.sigma},
          {"drift", drift}}},
    };
}

LsvModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("model file '" + path + "': " + e.what());
    }
    return model_from_json(doc);
}

}  // namespace lsv

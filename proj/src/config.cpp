#include "wannuity/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace wannuity {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void expect_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail("unknown key '" + it.key() + "' in " + where);
}

double get_number(const json& j, const std::string& key) {
    if (!j.contains(key)) fail("missing key '" + key + "'");
    if (!j.at(key).is_number()) fail("key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

Mat get_matrix(const json& j, const std::string& key) {
    if (!j.contains(key)) fail("missing key '" + key + "'");
    const auto& rows = j.at(key);
    if (!rows.is_array() || rows.empty()) fail("key '" + key + "' must be a nested array");
    const auto n = rows.size();
    Mat out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n)
            fail("key '" + key + "' must be a square row-major nested array");
        for (std::size_t k = 0; k < n; ++k) {
            if (!rows[i][k].is_number()) fail("matrix '" + key + "' has a non-numeric entry");
            out(i, k) = rows[i][k].get<double>();
        }
    }
    return out;
}

json matrix_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

ModelConfig ModelConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const std::exception& e) {
        fail(std::string("config is not valid JSON: ") + e.what());
    }
    return parse(j);
}

ModelConfig ModelConfig::parse(const nlohmann::ordered_json& j) {
    expect_keys(j,
                {"version", "alpha", "r", "beta", "sigma", "m", "v0", "legs", "schedule", "g",
                 "z_i", "quadrature", "mc"},
                "config root");
    ModelConfig c;
    if (j.contains("version")) {
        c.version_ = j.at("version").get<int>();
        if (c.version_ != 1) fail("unsupported config version");
    }
    c.alpha_ = get_number(j, "alpha");
    c.r_ = get_number(j, "r");
    c.beta_ = get_number(j, "beta");
    c.sigma_ = get_matrix(j, "sigma");
    c.m_ = get_matrix(j, "m");
    c.v0_ = get_matrix(j, "v0");

    if (!j.contains("legs") || !j.at("legs").is_array() || j.at("legs").empty())
        fail("'legs' must be a nonempty list of PSD matrices");
    for (std::size_t i = 0; i < j.at("legs").size(); ++i) {
        json wrapper;
        wrapper["leg"] = j.at("legs")[i];
        c.legs_.push_back(get_matrix(wrapper, "leg"));
    }

    if (!j.contains("schedule")) fail("missing key 'schedule'");
    const auto& s = j.at("schedule");
    expect_keys(s, {"T", "num_payments", "dates"}, "schedule");
    c.schedule_.T = get_number(s, "T");
    if (s.contains("num_payments") == s.contains("dates"))
        fail("schedule needs exactly one of 'num_payments' or 'dates'");
    if (s.contains("num_payments")) {
        c.schedule_by_count_ = true;
        c.num_payments_ = s.at("num_payments").get<int>();
        if (c.num_payments_ < 1) fail("schedule.num_payments must be >= 1");
        c.schedule_ = AnnuitySchedule::yearly(c.schedule_.T, c.num_payments_);
    } else {
        c.schedule_by_count_ = false;
        for (const auto& d : s.at("dates")) c.schedule_.payment_dates.push_back(d.get<double>());
    }

    c.g_ = get_number(j, "g");
    c.z_i_ = get_number(j, "z_i");

    if (j.contains("quadrature")) {
        c.has_quad_override_ = true;
        const auto& q = j.at("quadrature");
        expect_keys(q, {"abs_tol", "rel_tol", "panel_order", "max_panels", "truncation_ratio"},
                    "quadrature");
        if (q.contains("abs_tol")) c.quad_.abs_tol = q.at("abs_tol").get<double>();
        if (q.contains("rel_tol")) c.quad_.rel_tol = q.at("rel_tol").get<double>();
        if (q.contains("panel_order")) c.quad_.panel_order = q.at("panel_order").get<int>();
        if (q.contains("max_panels")) c.quad_.max_panels = q.at("max_panels").get<int>();
        if (q.contains("truncation_ratio"))
            c.quad_.truncation_ratio = q.at("truncation_ratio").get<double>();
    }
    if (j.contains("mc")) {
        c.has_mc_override_ = true;
        const auto& m = j.at("mc");
        expect_keys(m, {"paths", "dt", "seed"}, "mc");
        if (m.contains("paths")) c.mc_.paths = m.at("paths").get<long>();
        if (m.contains("dt")) c.mc_.dt = m.at("dt").get<double>();
        if (m.contains("seed")) c.mc_.seed = m.at("seed").get<std::uint64_t>();
    }

    try {
        c.quad_.validate();
        c.mc_.validate();
        c.schedule_.validate();
        c.build_model(); // delegate parameter validation to the module invariants
        if (c.g_ > 0.0) c.contract().validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        fail(e.what());
    }
    return c;
}

nlohmann::ordered_json ModelConfig::canonical_json() const {
    json j;
    j["version"] = version_;
    j["alpha"] = alpha_;
    j["r"] = r_;
    j["beta"] = beta_;
    j["sigma"] = matrix_json(sigma_);
    j["m"] = matrix_json(m_);
    j["v0"] = matrix_json(v0_);
    json legs = json::array();
    for (const auto& u : legs_) legs.push_back(matrix_json(u));
    j["legs"] = legs;
    json s;
    s["T"] = schedule_.T;
    if (schedule_by_count_)
        s["num_payments"] = num_payments_;
    else
        s["dates"] = schedule_.payment_dates;
    j["schedule"] = s;
    j["g"] = g_;
    j["z_i"] = z_i_;
    if (has_quad_override_) {
        json q;
        q["abs_tol"] = quad_.abs_tol;
        q["rel_tol"] = quad_.rel_tol;
        q["panel_order"] = quad_.panel_order;
        q["max_panels"] = quad_.max_panels;
        q["truncation_ratio"] = quad_.truncation_ratio;
        j["quadrature"] = q;
    }
    if (has_mc_override_) {
        json m;
        m["paths"] = mc_.paths;
        m["dt"] = mc_.dt;
        m["seed"] = mc_.seed;
        j["mc"] = m;
    }
    return j;
}

std::string ModelConfig::dump() const { return canonical_json().dump(2) + "\n"; }

std::string ModelConfig::hash() const {
    const std::string text = dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

MortalityModel ModelConfig::build_model() const {
    auto params = WishartParams::create(beta_, sigma_, m_, v0_);
    return MortalityModel::create(std::move(params), legs_, alpha_);
}

GaoContract ModelConfig::contract() const {
    GaoContract c;
    c.schedule = schedule_;
    c.g = g_;
    c.z_i = z_i_;
    return c;
}

double ModelConfig::rho_sigma() const {
    return sigma_(0, 1) / std::sqrt(sigma_(0, 0) * sigma_(1, 1));
}

ModelConfig ModelConfig::with_alpha(double a) const {
    ModelConfig c = *this;
    c.alpha_ = a;
    return c;
}

ModelConfig ModelConfig::with_beta(double b) const {
    ModelConfig c = *this;
    c.beta_ = b;
    return c;
}

ModelConfig ModelConfig::with_rho_sigma(double rho) const {
    ModelConfig c = *this;
    const double s12 = rho * std::sqrt(sigma_(0, 0) * sigma_(1, 1));
    c.sigma_(0, 1) = c.sigma_(1, 0) = s12;
    return c;
}

ModelConfig ModelConfig::with_m11(double m11) const {
    ModelConfig c = *this;
    c.m_(0, 0) = m11;
    return c;
}

ModelConfig ModelConfig::with_sigma11(double s11) const {
    ModelConfig c = *this;
    const double rho = rho_sigma();
    c.sigma_(0, 0) = s11;
    const double s12 = rho * std::sqrt(s11 * sigma_(1, 1));
    c.sigma_(0, 1) = c.sigma_(1, 0) = s12;
    return c;
}

ModelConfig ModelConfig::with_option_date(double T) const {
    ModelConfig c = *this;
    std::vector<double> offsets;
    for (double d : schedule_.payment_dates) offsets.push_back(d - schedule_.T);
    c.schedule_.T = T;
    c.schedule_.payment_dates.clear();
    for (double o : offsets) c.schedule_.payment_dates.push_back(T + o);
    return c;
}

ModelConfig ModelConfig::with_g(double g) const {
    ModelConfig c = *this;
    c.g_ = g;
    return c;
}

} // namespace wannuity

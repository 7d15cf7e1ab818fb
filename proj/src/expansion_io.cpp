#include "sjf/expansion_io.hpp"

#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace sjf {

using json = nlohmann::ordered_json;

namespace {

json mat_to_json(const RatMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

RatMatrix mat_from_json(const json& j) {
    int rows = static_cast<int>(j.size());
    int cols = rows ? static_cast<int>(j.at(0).size()) : 0;
    RatMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int jj = 0; jj < cols; ++jj)
            m(i, jj) = Rational::parse(j.at(i).at(jj).get<std::string>());
    return m;
}

Rational half_weight(int twice_k) { return Rational(twice_k, 2L); }

}  // namespace

std::string expansion_to_json(const FourierExpansion& f) {
    json j;
    j["version"] = "expansion/v1";
    j["n"] = f.degree();
    j["l"] = f.index_size();
    j["weight"] = half_weight(f.twice_weight()).str();
    j["S"] = mat_to_json(f.index().mat());
    j["level"] = {{"b", f.level_b().str()}, {"N", f.level_N().get_str()}};
    j["denom_t"] = f.denom_t().get_str();
    j["denom_r"] = f.denom_r().get_str();
    j["trunc"] = f.trunc().str();
    json coeffs = json::array();
    // std::map ordering is the canonical key encoding order already.
    for (const auto& [k, v] : f.coeffs()) {
        json entry;
        entry["t"] = mat_to_json(k.t);
        entry["r"] = mat_to_json(k.r);
        entry["c"] = v.str();
        coeffs.push_back(entry);
    }
    j["coeffs"] = coeffs;
    return j.dump(2) + "\n";
}

FourierExpansion expansion_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.at("version").get<std::string>() != "expansion/v1")
        throw std::invalid_argument("expansion_from_json: unknown version tag");
    int n = j.at("n").get<int>();
    int l = j.at("l").get<int>();
    Rational w = Rational::parse(j.at("weight").get<std::string>());
    Rational twice = w * Rational(2);
    if (!twice.is_integer())
        throw std::invalid_argument("expansion_from_json: weight not half-integral");
    RatMatrix S = mat_from_json(j.at("S"));
    Rational trunc = Rational::parse(j.at("trunc").get<std::string>());
    Int denom_t(j.at("denom_t").get<std::string>());
    Int denom_r(j.at("denom_r").get<std::string>());
    Rational level_b = Rational::parse(j.at("level").at("b").get<std::string>());
    Int level_N(j.at("level").at("N").get<std::string>());
    FourierExpansion f(n, l, static_cast<int>(twice.num().get_si()), SymMatrix(S),
                       trunc, denom_t, denom_r, level_b, level_N);
    for (const auto& entry : j.at("coeffs")) {
        RatMatrix t = mat_from_json(entry.at("t"));
        RatMatrix r = mat_from_json(entry.at("r"));
        f.add_coeff(t, r, Rational::parse(entry.at("c").get<std::string>()));
    }
    return f;
}

void write_expansion_file(const std::string& path, const FourierExpansion& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << expansion_to_json(f);
}

FourierExpansion read_expansion_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    std::string text((std::istreambuf_iterator<char>(is)),
                     std::istreambuf_iterator<char>());
    return expansion_from_json(text);
}

}  // namespace sjf

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "latlab/curve.hpp"
#include "latlab/experiment.hpp"
#include "latlab/lattice.hpp"
#include "latlab_app/config.hpp"
#include "latlab_app/run.hpp"

namespace latlab::app {

// curve = <catalog id> (with n for families), or curve_psi = <components>
// with optional curve_d and curve_domain, or curve_file = <path>.
CurveSpec resolve_curve(const Config& cfg, const std::string& fallback_id = "");
inline const std::set<std::string> kCurveKeys{"curve", "n", "curve_psi", "curve_d", "curve_domain", "curve_file"};

// "cube:r" for [-r, r]^dim, or "a..b, a..b, ..." with one interval per axis.
Box parse_box(const Config& cfg, const std::string& key, std::size_t dim, const std::string& fallback);
// The same interval forms, or "ball:r" / "ball:r@c1;c2;..." for Euclidean balls.
Body parse_body(const Config& cfg, const std::string& key, std::size_t dim, const std::string& fallback);

template <class T>
nlohmann::json matrix_json(const Matrix<T>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(ScalarTraits<T>::to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::uint64_t config_seed(const Config& cfg);

}  // namespace latlab::app

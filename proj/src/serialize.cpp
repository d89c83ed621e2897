#include "rtorsion/serialize.hpp"

#include <cstdint>
#include <sstream>

namespace rtorsion {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_str(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& context) {
  if (!j.is_array()) throw ParseError(context + ": matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j.at(i);
    if (!row.is_array() || row.size() != cols) {
      throw ParseError(context + ": ragged matrix at row " + std::to_string(i));
    }
    for (std::size_t k = 0; k < cols; ++k) {
      const json& cell = row.at(k);
      if (!cell.is_string()) {
        throw ParseError(context + ": matrix entries must be rational strings");
      }
      try {
        m.at(i, k) = rat_parse(cell.get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ParseError(context + ": " + e.what());
      }
    }
  }
  return m;
}

Matrix matrix_from_json(const json& j, std::size_t expected_rows,
                        std::size_t expected_cols, const std::string& context) {
  Matrix m = matrix_from_json(j, context);
  // Nested arrays cannot distinguish 0xk from 0x0 or kx0 shapes; the
  // expected shape disambiguates.
  if (m.rows() == 0 && expected_rows == 0) return Matrix(0, expected_cols);
  if (m.cols() == 0 && expected_cols == 0 && m.rows() == expected_rows) {
    return Matrix(expected_rows, 0);
  }
  if (m.rows() != expected_rows || m.cols() != expected_cols) {
    throw ParseError(context + ": expected shape " + std::to_string(expected_rows) + "x" +
                     std::to_string(expected_cols) + ", got " + std::to_string(m.rows()) +
                     "x" + std::to_string(m.cols()));
  }
  return m;
}

SymplecticComplex InstanceFile::symplectic() const {
  if (!pairings) throw std::logic_error("instance has no pairings");
  return SymplecticComplex{complex, *pairings};
}

namespace {

json basis_family_to_json(const BasisFamily& f) {
  json obj = json::object();
  for (std::size_t p = 0; p < f.size(); ++p) {
    obj[std::to_string(p)] = matrix_to_json(f[p]);
  }
  return obj;
}

BasisFamily basis_family_from_json(const json& j, const ChainComplex& c,
                                   const std::string& context) {
  if (!j.is_object()) throw ParseError(context + ": basis family must be an object");
  BasisFamily f;
  for (int p = 0; p <= c.n; ++p) {
    const std::string key = std::to_string(p);
    if (!j.contains(key)) throw ParseError(context + ": missing degree " + key);
    Matrix m = matrix_from_json(j.at(key), context + "[" + key + "]");
    if (m.rows() == 0 && c.dim(p) == 0) m = Matrix(0, m.cols());
    if (m.rows() != static_cast<std::size_t>(c.dim(p))) {
      // A degree with 0 columns serializes as []; fix up the row count.
      if (m.cols() == 0) {
        m = Matrix(static_cast<std::size_t>(c.dim(p)), 0);
      } else {
        throw ParseError(context + ": wrong ambient dimension at degree " + key);
      }
    }
    f.push_back(std::move(m));
  }
  return f;
}

}  // namespace

json instance_to_json(const InstanceFile& f) {
  json j = json::object();
  j["format_version"] = f.format_version;
  j["kind"] = f.is_symplectic() ? "symplectic_complex" : "chain_complex";
  j["n"] = f.complex.n;
  j["dims"] = f.complex.dims;
  json boundaries = json::array();
  for (const Matrix& b : f.complex.boundaries) boundaries.push_back(matrix_to_json(b));
  j["boundaries"] = boundaries;
  if (f.pairings) {
    json pairings = json::array();
    for (const Matrix& p : *f.pairings) pairings.push_back(matrix_to_json(p));
    j["pairings"] = pairings;
  }
  if (f.chain_bases) j["chain_bases"] = basis_family_to_json(*f.chain_bases);
  if (f.homology_bases) j["homology_bases"] = basis_family_to_json(*f.homology_bases);
  return j;
}

InstanceFile instance_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("instance: top level must be an object");
  InstanceFile f;
  if (!j.contains("format_version") || !j.at("format_version").is_string()) {
    throw ParseError("instance: missing format_version");
  }
  f.format_version = j.at("format_version").get<std::string>();
  if (f.format_version != "1") {
    throw ParseError("instance: unrecognized format_version '" + f.format_version + "'");
  }
  if (!j.contains("n") || !j.at("n").is_number_integer()) {
    throw ParseError("instance: missing integer n");
  }
  f.complex.n = j.at("n").get<int>();
  if (f.complex.n < 0) throw ParseError("instance: n must be >= 0");
  if (!j.contains("dims") || !j.at("dims").is_array() ||
      j.at("dims").size() != static_cast<std::size_t>(f.complex.n) + 1) {
    throw ParseError("instance: dims must be an array of length n+1");
  }
  for (const auto& d : j.at("dims")) {
    if (!d.is_number_integer() || d.get<int>() < 0) {
      throw ParseError("instance: dims entries must be non-negative integers");
    }
    f.complex.dims.push_back(d.get<int>());
  }
  if (!j.contains("boundaries") || !j.at("boundaries").is_array() ||
      j.at("boundaries").size() != static_cast<std::size_t>(f.complex.n)) {
    throw ParseError("instance: boundaries must be an array of length n");
  }
  for (int p = 1; p <= f.complex.n; ++p) {
    f.complex.boundaries.push_back(matrix_from_json(
        j.at("boundaries").at(static_cast<std::size_t>(p) - 1),
        static_cast<std::size_t>(f.complex.dim(p - 1)),
        static_cast<std::size_t>(f.complex.dim(p)),
        "boundaries[" + std::to_string(p - 1) + "]"));
  }
  if (j.contains("pairings")) {
    const json& pj = j.at("pairings");
    const int n = f.complex.n;
    const std::size_t full = static_cast<std::size_t>(n) + 1;
    const std::size_t lower = static_cast<std::size_t>(n / 2) + 1;
    if (!pj.is_array() || (pj.size() != full && pj.size() != lower)) {
      throw ParseError("instance: pairings must have length n+1 or n/2+1");
    }
    std::vector<Matrix> pairings(full);
    for (std::size_t p = 0; p < pj.size(); ++p) {
      pairings[p] = matrix_from_json(
          pj.at(p), static_cast<std::size_t>(f.complex.dim(static_cast<int>(p))),
          static_cast<std::size_t>(f.complex.dim(n - static_cast<int>(p))),
          "pairings[" + std::to_string(p) + "]");
    }
    if (pj.size() == lower) {
      // Derive the upper half from antisymmetry.
      for (std::size_t p = 0; p < lower - 1; ++p) {
        const Matrix t = pairings[p].transpose();
        pairings[full - 1 - p] = (p % 2 == 0) ? t : -t;
      }
    }
    f.pairings = std::move(pairings);
  }
  if (j.contains("chain_bases")) {
    f.chain_bases = basis_family_from_json(j.at("chain_bases"), f.complex, "chain_bases");
  }
  if (j.contains("homology_bases")) {
    f.homology_bases =
        basis_family_from_json(j.at("homology_bases"), f.complex, "homology_bases");
  }
  return f;
}

std::string canonical_dump(const json& j) { return j.dump(); }

json ses_to_json(const ShortExactSequence& s) {
  auto complex_json = [](const ChainComplex& c) {
    InstanceFile f;
    f.complex = c;
    return instance_to_json(f);
  };
  json j = json::object();
  j["sub"] = complex_json(s.sub);
  j["total"] = complex_json(s.total);
  j["quotient"] = complex_json(s.quotient);
  json inc = json::array(), proj = json::array();
  for (const Matrix& m : s.inclusion) inc.push_back(matrix_to_json(m));
  for (const Matrix& m : s.projection) proj.push_back(matrix_to_json(m));
  j["inclusion"] = inc;
  j["projection"] = proj;
  return j;
}

ShortExactSequence ses_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("ses: top level must be an object");
  ShortExactSequence s;
  for (const char* key : {"sub", "total", "quotient"}) {
    if (!j.contains(key)) throw ParseError(std::string("ses: missing ") + key);
  }
  s.sub = instance_from_json(j.at("sub")).complex;
  s.total = instance_from_json(j.at("total")).complex;
  s.quotient = instance_from_json(j.at("quotient")).complex;
  const int n = s.total.n;
  for (const char* key : {"inclusion", "projection"}) {
    if (!j.contains(key) || !j.at(key).is_array() ||
        j.at(key).size() != static_cast<std::size_t>(n) + 1) {
      throw ParseError(std::string("ses: ") + key + " must be an array of length n+1");
    }
  }
  for (int p = 0; p <= n; ++p) {
    s.inclusion.push_back(matrix_from_json(
        j.at("inclusion").at(static_cast<std::size_t>(p)),
        static_cast<std::size_t>(s.total.dim(p)), static_cast<std::size_t>(s.sub.dim(p)),
        "inclusion[" + std::to_string(p) + "]"));
    s.projection.push_back(matrix_from_json(
        j.at("projection").at(static_cast<std::size_t>(p)),
        static_cast<std::size_t>(s.quotient.dim(p)), static_cast<std::size_t>(s.total.dim(p)),
        "projection[" + std::to_string(p) + "]"));
  }
  return s;
}

json torsion_report_to_json(const TorsionReport& r) {
  json j = json::object();
  j["value"] = rat_str(r.value);
  json factors = json::array();
  for (const DegreeFactor& f : r.factors) {
    json fj = json::object();
    fj["degree"] = f.degree;
    fj["base_change"] = rat_str(f.base_change);
    fj["exponent"] = f.exponent;
    fj["applied"] = rat_str(f.applied);
    factors.push_back(std::move(fj));
  }
  j["factors"] = factors;
  return j;
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << h;
  return out.str();
}

}  // namespace rtorsion

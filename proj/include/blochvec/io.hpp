#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coherence.hpp"
#include "common.hpp"
#include "positivity.hpp"
#include "su_basis.hpp"

namespace blochvec::io {

using json = nlohmann::json;

inline constexpr int format_version = 1;

enum class DocumentKind { Matrix, Coherence, Ket, AffineMap };

inline const char* to_string(DocumentKind k) {
  switch (k) {
    case DocumentKind::Matrix: return "matrix";
    case DocumentKind::Coherence: return "coherence";
    case DocumentKind::Ket: return "ket";
    case DocumentKind::AffineMap: return "affine_map";
  }
  return "?";
}

/// One JSON file. Only the payload named by `kind` is populated.
///   matrix:     {"dim": N, "matrix": [[[re, im], ...], ...]}
///   coherence:  {"dim": N, "n": [...]}
///   ket:        {"dims": [...], "amplitudes": [[re, im], ...]}
///   affine_map: {"dim": N, "T": [[...], ...], "t": [...]}
/// "dims" is optional for matrices and records a tensor layout.
struct MatrixDocument {
  int version = format_version;
  DocumentKind kind = DocumentKind::Matrix;
  int dim = 0;
  std::vector<int> dims;
  ComplexMatrix matrix;
  RealVector n;
  ComplexVector amplitudes;
  RealMatrix T;
  RealVector t;

  bool operator==(const MatrixDocument& o) const {
    auto same = [](const auto& a, const auto& b) { return a.rows() == b.rows() && a.cols() == b.cols() && a == b; };
    return version == o.version && kind == o.kind && dim == o.dim && dims == o.dims && same(matrix, o.matrix) && same(n, o.n) &&
           same(amplitudes, o.amplitudes) && same(T, o.T) && same(t, o.t);
  }
};

namespace detail {
[[noreturn]] inline void fail(const std::string& what) { throw Error(ErrorKind::Parse, what); }

inline cplx complex_of(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) fail("complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline RealVector real_vector_of(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  RealVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) fail(std::string(what) + " must hold numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

inline json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline int positive_int(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) fail(std::string("missing integer field '") + key + "'");
  const int value = doc[key].get<int>();
  if (value < 2) fail(std::string("'") + key + "' must be at least 2");
  return value;
}

inline const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) fail(std::string("missing field '") + key + "'");
  return doc[key];
}
}  // namespace detail

inline MatrixDocument from_json(const json& doc) {
  if (!doc.is_object()) detail::fail("document must be a JSON object");
  MatrixDocument out;
  out.version = doc.value("format_version", format_version);
  if (out.version != format_version) detail::fail("unsupported format_version " + std::to_string(out.version));

  const std::string kind = doc.value("kind", std::string("matrix"));
  if (doc.contains("dims")) {
    const auto& dims = doc["dims"];
    if (!dims.is_array() || dims.empty()) detail::fail("'dims' must be a non-empty array");
    for (const auto& d : dims) {
      if (!d.is_number_integer() || d.get<int>() < 2) detail::fail("'dims' entries must be integers >= 2");
      out.dims.push_back(d.get<int>());
    }
  }
  int dims_product = 1;
  for (int d : out.dims) dims_product *= d;

  if (kind == "matrix") {
    out.kind = DocumentKind::Matrix;
    out.dim = doc.contains("dim") ? detail::positive_int(doc, "dim") : dims_product;
    if (!out.dims.empty() && dims_product != out.dim) detail::fail("'dims' product does not equal 'dim'");
    const auto& rows = detail::field(doc, "matrix");
    if (!rows.is_array() || static_cast<int>(rows.size()) != out.dim) detail::fail("matrix must have 'dim' rows");
    out.matrix.resize(out.dim, out.dim);
    for (int r = 0; r < out.dim; ++r) {
      const auto& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != out.dim) detail::fail("matrix must be square with 'dim' columns");
      for (int c = 0; c < out.dim; ++c) out.matrix(r, c) = detail::complex_of(row[static_cast<std::size_t>(c)]);
    }
  } else if (kind == "coherence") {
    out.kind = DocumentKind::Coherence;
    out.dim = detail::positive_int(doc, "dim");
    out.n = detail::real_vector_of(detail::field(doc, "n"), "'n'");
    if (out.n.size() != adjoint_size(out.dim)) detail::fail("'n' must have N^2 - 1 entries");
  } else if (kind == "ket") {
    out.kind = DocumentKind::Ket;
    const auto& amps = detail::field(doc, "amplitudes");
    if (!amps.is_array()) detail::fail("'amplitudes' must be an array");
    out.dim = static_cast<int>(amps.size());
    if (!out.dims.empty() && dims_product != out.dim) detail::fail("'dims' product does not equal the amplitude count");
    out.amplitudes.resize(out.dim);
    for (int i = 0; i < out.dim; ++i) out.amplitudes(i) = detail::complex_of(amps[static_cast<std::size_t>(i)]);
  } else if (kind == "affine_map") {
    out.kind = DocumentKind::AffineMap;
    out.dim = detail::positive_int(doc, "dim");
    const int len = adjoint_size(out.dim);
    const auto& rows = detail::field(doc, "T");
    if (!rows.is_array() || static_cast<int>(rows.size()) != len) detail::fail("'T' must be (N^2-1) x (N^2-1)");
    out.T.resize(len, len);
    for (int r = 0; r < len; ++r) {
      const RealVector row = detail::real_vector_of(rows[static_cast<std::size_t>(r)], "'T' rows");
      if (row.size() != len) detail::fail("'T' must be (N^2-1) x (N^2-1)");
      out.T.row(r) = row.transpose();
    }
    out.t = doc.contains("t") ? detail::real_vector_of(doc["t"], "'t'") : RealVector::Zero(len);
    if (out.t.size() != len) detail::fail("'t' must have N^2 - 1 entries");
  } else {
    detail::fail("unknown document kind '" + kind + "'");
  }
  return out;
}

inline json to_json(const MatrixDocument& d) {
  json doc;
  doc["format_version"] = d.version;
  doc["kind"] = to_string(d.kind);
  if (!d.dims.empty()) doc["dims"] = d.dims;
  switch (d.kind) {
    case DocumentKind::Matrix: {
      doc["dim"] = d.dim;
      json rows = json::array();
      for (Eigen::Index r = 0; r < d.matrix.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < d.matrix.cols(); ++c) row.push_back(detail::complex_json(d.matrix(r, c)));
        rows.push_back(row);
      }
      doc["matrix"] = rows;
      break;
    }
    case DocumentKind::Coherence:
      doc["dim"] = d.dim;
      doc["n"] = std::vector<double>(d.n.begin(), d.n.end());
      break;
    case DocumentKind::Ket: {
      json amps = json::array();
      for (Eigen::Index i = 0; i < d.amplitudes.size(); ++i) amps.push_back(detail::complex_json(d.amplitudes(i)));
      doc["amplitudes"] = amps;
      break;
    }
    case DocumentKind::AffineMap: {
      doc["dim"] = d.dim;
      json rows = json::array();
      for (Eigen::Index r = 0; r < d.T.rows(); ++r) {
        const RealVector row = d.T.row(r).transpose();
        rows.push_back(std::vector<double>(row.begin(), row.end()));
      }
      doc["T"] = rows;
      doc["t"] = std::vector<double>(d.t.begin(), d.t.end());
      break;
    }
  }
  return doc;
}

inline MatrixDocument parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    detail::fail(e.what());
  }
  return from_json(doc);
}

inline MatrixDocument load(const std::string& path) {
  std::ifstream in(path);
  if (!in) detail::fail("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

inline MatrixDocument document_of(const HermitianOperator& op) {
  MatrixDocument d;
  d.kind = DocumentKind::Matrix;
  d.dim = op.dim();
  d.matrix = op.matrix();
  return d;
}

inline MatrixDocument document_of(const CoherenceState& state) {
  MatrixDocument d;
  d.kind = DocumentKind::Coherence;
  d.dim = state.dim;
  d.n = state.n;
  return d;
}

inline MatrixDocument document_of(const AffineMap& map) {
  MatrixDocument d;
  d.kind = DocumentKind::AffineMap;
  d.dim = map.dim;
  d.T = map.T;
  d.t = map.t;
  return d;
}

/// Matrix documents are converted through `basis`; coherence documents pass through.
inline CoherenceState state_of(const MatrixDocument& d, const BasisSet& basis) {
  switch (d.kind) {
    case DocumentKind::Matrix: return to_coherence(HermitianOperator(d.matrix), basis);
    case DocumentKind::Coherence: return {d.dim, d.n};
    default: throw Error(ErrorKind::InvalidInput, std::string("expected a matrix or coherence document, got ") + to_string(d.kind));
  }
}

inline AffineMap map_of(const MatrixDocument& d) {
  if (d.kind != DocumentKind::AffineMap) throw Error(ErrorKind::InvalidInput, "expected an affine_map document");
  return {d.dim, d.T, d.t};
}

/// {"dim": N, "elements": [[[re, im], ...], ...]}, each element flattened row-major.
inline json basis_to_json(const BasisSet& basis) {
  json elements = json::array();
  for (const auto& e : basis.elements) {
    json flat = json::array();
    for (Eigen::Index r = 0; r < e.rows(); ++r)
      for (Eigen::Index c = 0; c < e.cols(); ++c) flat.push_back(detail::complex_json(e(r, c)));
    elements.push_back(flat);
  }
  json doc{{"dim", basis.dim}, {"elements", elements}};
  if (!basis.subsystem_dims.empty()) doc["dims"] = basis.subsystem_dims;
  return doc;
}

}  // namespace blochvec::io

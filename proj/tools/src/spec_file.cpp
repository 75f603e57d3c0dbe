#include "arrayctl_cli/spec_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace arrayctl::cli {

using nlohmann::json;

namespace {

int read_dimension(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  const json& v = doc.at(key);
  if (!v.is_number_integer()) throw ParseError(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

double read_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + " must be a number");
  return v.get<double>();
}

Matrix read_matrix(const json& v, Index rows, Index cols, const std::string& what) {
  if (!v.is_array() || static_cast<Index>(v.size()) != rows) {
    throw ParseError(what + " must be an array of " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = v[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ParseError(what + " row " + std::to_string(i + 1) + " must have " +
                       std::to_string(cols) + " entries");
    }
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = read_number(row[static_cast<size_t>(j)],
                            what + "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]");
    }
  }
  return m;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ParseError("unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

}  // namespace

SpecFile parse_spec(const json& doc) {
  if (!doc.is_object()) throw ParseError("spec must be a JSON object");
  reject_unknown(doc, {"name", "n", "q", "p", "A", "B", "tolerances"}, "spec");

  const int n = read_dimension(doc, "n");
  const int q = read_dimension(doc, "q");
  const int p = read_dimension(doc, "p");
  if (n < 1 || q < 1 || p < 1) throw ParseError("n, q and p must be positive");
  if (!doc.contains("A")) throw ParseError("missing key \"A\"");
  if (!doc.contains("B")) throw ParseError("missing key \"B\"");

  std::string name = "array";
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw ParseError("\"name\" must be a string");
    name = doc.at("name").get<std::string>();
  }

  const Matrix a = read_matrix(doc.at("A"), n, n, "A");

  const json& b = doc.at("B");
  if (!b.is_object() || b.size() != 1 || !(b.contains("blocks") || b.contains("incidence"))) {
    throw ParseError("\"B\" must be an object with exactly one of \"blocks\" or \"incidence\"");
  }
  SpecFile out;
  if (b.contains("incidence")) {
    const Matrix inc = read_matrix(b.at("incidence"), static_cast<Index>(q) * n, p, "B.incidence");
    out.spec = ArraySpec::from_incidence(name, a, q, inc);
  } else {
    const json& blocks = b.at("blocks");
    if (!blocks.is_array() || static_cast<int>(blocks.size()) != q) {
      throw ParseError("B.blocks must list q = " + std::to_string(q) + " systems");
    }
    std::vector<std::vector<Vector>> vecs(static_cast<size_t>(q));
    for (int i = 0; i < q; ++i) {
      const json& sys = blocks[static_cast<size_t>(i)];
      if (!sys.is_array() || static_cast<int>(sys.size()) != p) {
        throw ParseError("B.blocks[" + std::to_string(i + 1) + "] must list p = " +
                         std::to_string(p) + " vectors");
      }
      for (int s = 0; s < p; ++s) {
        const json& vec = sys[static_cast<size_t>(s)];
        const std::string where = "B.blocks[" + std::to_string(i + 1) + "][" + std::to_string(s + 1) + "]";
        if (!vec.is_array() || static_cast<int>(vec.size()) != n) {
          throw ParseError(where + " must have n = " + std::to_string(n) + " entries");
        }
        Vector v(n);
        for (int r = 0; r < n; ++r) v(r) = read_number(vec[static_cast<size_t>(r)], where);
        vecs[static_cast<size_t>(i)].push_back(v);
      }
    }
    out.spec = ArraySpec::from_blocks(name, a, vecs);
  }

  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    if (!t.is_object()) throw ParseError("\"tolerances\" must be an object");
    reject_unknown(t, {"rank", "cone", "eig", "zero"}, "tolerances");
    auto set = [&](const char* key, double& field) {
      if (!t.contains(key)) return;
      const double v = read_number(t.at(key), std::string("tolerances.") + key);
      if (!(v >= 0.0)) throw ParseError(std::string("tolerances.") + key + " must be nonnegative");
      field = v;
    };
    set("rank", out.tolerances.rank);
    set("cone", out.tolerances.cone);
    set("eig", out.tolerances.eig);
    set("zero", out.tolerances.zero);
  }
  return out;
}

SpecFile parse_spec_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_spec(doc);
}

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

json spec_to_json(const ArraySpec& spec) {
  json a = json::array();
  for (Index i = 0; i < spec.A.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < spec.A.cols(); ++j) row.push_back(spec.A(i, j));
    a.push_back(row);
  }
  json inc = json::array();
  for (Index i = 0; i < spec.B.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < spec.B.cols(); ++j) row.push_back(spec.B(i, j));
    inc.push_back(row);
  }
  json doc;
  doc["name"] = spec.name;
  doc["n"] = spec.n;
  doc["q"] = spec.q;
  doc["p"] = spec.p;
  doc["A"] = a;
  doc["B"] = {{"incidence", inc}};
  return doc;
}

}  // namespace arrayctl::cli

#include "specbox/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace specbox {

namespace {

using Json = nlohmann::ordered_json;

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex values must be [re, im]");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json block_to_json(const CMatrix& b) {
  if (b.rows() == 1 && b.cols() == 1) return complex_to_json(b(0, 0));
  Json rows = Json::array();
  for (std::size_t i = 0; i < b.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < b.cols(); ++j) row.push_back(complex_to_json(b(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix block_from_json(const Json& j, std::size_t p) {
  if (p == 1) {
    return CMatrix::from_rows(1, 1, {complex_from_json(j)});
  }
  if (!j.is_array() || j.size() != p) throw ParseError("block has wrong row count");
  std::vector<Complex> entries;
  entries.reserve(p * p);
  for (const Json& row : j) {
    if (!row.is_array() || row.size() != p) throw ParseError("block has wrong column count");
    for (const Json& e : row) entries.push_back(complex_from_json(e));
  }
  return CMatrix::from_rows(p, p, std::move(entries));
}

DiagonalGen gen_from_json(const Json& j, std::size_t p) {
  if (!j.is_object() || !j.contains("kind")) {
    throw ParseError("diagonal generator must be an object with a kind");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") {
    return DiagonalGen::constant(block_from_json(j.at("value"), p));
  }
  if (kind == "periodic") {
    std::vector<CMatrix> vals;
    for (const Json& v : j.at("values")) vals.push_back(block_from_json(v, p));
    if (j.contains("period") &&
        j.at("period").get<std::size_t>() != vals.size()) {
      throw ParseError("declared period does not match the value count");
    }
    return DiagonalGen::periodic(std::move(vals));
  }
  if (kind == "window") {
    std::map<std::int64_t, CMatrix> ents;
    for (const Json& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 2) {
        throw ParseError("window entries must be [index, value] pairs");
      }
      ents.emplace(e[0].get<std::int64_t>(), block_from_json(e[1], p));
    }
    return DiagonalGen::window(std::move(ents), block_from_json(j.at("default"), p));
  }
  if (kind == "sampled") {
    std::vector<CMatrix> vals;
    for (const Json& v : j.at("values")) vals.push_back(block_from_json(v, p));
    return DiagonalGen::sampled(std::move(vals), j.at("start").get<std::int64_t>());
  }
  throw ParseError("unknown generator kind: " + kind);
}

Json gen_to_json(const DiagonalGen& g) {
  Json j;
  switch (g.kind()) {
    case GenKind::Constant:
      j["kind"] = "constant";
      j["value"] = block_to_json(g.default_value());
      break;
    case GenKind::Periodic: {
      j["kind"] = "periodic";
      Json vals = Json::array();
      for (const CMatrix& v : g.values()) vals.push_back(block_to_json(v));
      j["values"] = std::move(vals);
      j["period"] = g.period();
      break;
    }
    case GenKind::Window: {
      j["kind"] = "window";
      Json ents = Json::array();
      for (const auto& [k, v] : g.entries()) {
        ents.push_back(Json::array({k, block_to_json(v)}));
      }
      j["entries"] = std::move(ents);
      j["default"] = block_to_json(g.default_value());
      break;
    }
    case GenKind::Sampled: {
      j["kind"] = "sampled";
      Json vals = Json::array();
      for (const CMatrix& v : g.values()) vals.push_back(block_to_json(v));
      j["values"] = std::move(vals);
      j["start"] = g.start();
      break;
    }
  }
  return j;
}

std::vector<Complex> symbols_from_json(const Json& j) {
  std::vector<Complex> out;
  for (const Json& v : j) out.push_back(complex_from_json(v));
  return out;
}

}  // namespace

OperatorFile parse_operator_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    OperatorFile file;
    if (j.contains("alpha") || j.contains("beta") || j.contains("gamma")) {
      const std::size_t p = j.value("block_dim", std::size_t{1});
      auto bound = [&](const char* name) -> std::optional<double> {
        if (!j.contains(name)) return std::nullopt;
        return j.at(name).get<double>();
      };
      file.op = OperatorSpec(gen_from_json(j.at("alpha"), p),
                             gen_from_json(j.at("beta"), p),
                             gen_from_json(j.at("gamma"), p),
                             bound("alpha_max"), bound("beta_max"),
                             bound("gamma_max"));
    }
    if (j.contains("alphabet")) {
      const Json& a = j.at("alphabet");
      file.alphabet = SymbolAlphabet{symbols_from_json(a.at("alpha")),
                                     symbols_from_json(a.at("beta")),
                                     symbols_from_json(a.at("gamma"))};
      if (file.alphabet->alpha.empty() || file.alphabet->beta.empty() ||
          file.alphabet->gamma.empty()) {
        throw ParseError("alphabet sets must be nonempty");
      }
    }
    if (!file.op && !file.alphabet) {
      throw ParseError("file describes neither an operator nor an alphabet");
    }
    return file;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid operator file: ") + e.what());
  }
}

std::string operator_file_to_json(const OperatorFile& file) {
  Json j;
  if (file.op) {
    const OperatorSpec& op = *file.op;
    j["block_dim"] = op.block_dim();
    j["alpha"] = gen_to_json(op.alpha());
    j["beta"] = gen_to_json(op.beta());
    j["gamma"] = gen_to_json(op.gamma());
    j["alpha_max"] = op.alpha_max();
    j["beta_max"] = op.beta_max();
    j["gamma_max"] = op.gamma_max();
  }
  if (file.alphabet) {
    Json a;
    auto list = [](const std::vector<Complex>& v) {
      Json arr = Json::array();
      for (const Complex& z : v) arr.push_back(complex_to_json(z));
      return arr;
    };
    a["alpha"] = list(file.alphabet->alpha);
    a["beta"] = list(file.alphabet->beta);
    a["gamma"] = list(file.alphabet->gamma);
    j["alphabet"] = std::move(a);
  }
  return j.dump(2) + "\n";
}

OperatorFile load_operator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open operator file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_operator_json(buf.str());
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string mu_grid_csv(const MuGrid& g) {
  std::string out = "# schema: specbox.mugrid.v1\n";
  out += "re,im,mu,member,method,n,eps\n";
  const std::string method = method_name(g.method);
  const std::string eps = format_double(g.eps);
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    out += format_double(g.points[i].real());
    out += ',';
    out += format_double(g.points[i].imag());
    out += ',';
    out += format_double(g.mu_values[i]);
    out += ',';
    out += g.members[i] ? '1' : '0';
    out += ',';
    out += method;
    out += ',';
    out += std::to_string(g.n);
    out += ',';
    out += eps;
    out += '\n';
  }
  return out;
}

std::string penalty_csv(const std::vector<std::size_t>& ns, double r, double s) {
  std::string out = "# schema: specbox.penalty.v1\n";
  out += "n,tau_optimal,tau_ratio_bound,tau_symmetric_bound,pi,tau1,eps_star,eps_dagger\n";
  for (std::size_t n : ns) {
    out += std::to_string(n);
    out += ',';
    out += format_double(eps_tau(n, r, s, TauMode::Optimal).value);
    out += ',';
    out += format_double(eps_tau(n, r, s, TauMode::RatioBound).value);
    out += ',';
    out += format_double(eps_tau(n, r, s, TauMode::SymmetricBound).value);
    out += ',';
    out += format_double(eps_pi(n, r, s));
    out += ',';
    out += format_double(eps_tau1(n, r, s));
    out += ',';
    out += format_double(eps_rational(RationalKind::Star, n, r, s));
    out += ',';
    out += format_double(eps_rational(RationalKind::Dagger, n, r, s));
    out += '\n';
  }
  return out;
}

std::string points_csv(const PointSet& s) {
  std::string out = "# schema: specbox.points.v1\n";
  out += "re,im\n";
  for (const Complex& z : s.points) {
    out += format_double(z.real());
    out += ',';
    out += format_double(z.imag());
    out += '\n';
  }
  return out;
}

std::string sweep_csv(const SymbolSweep& s) {
  std::string out = "# schema: specbox.points.v1\n";
  out += "re,im,z_re,z_im\n";
  for (std::size_t m = 0; m < s.samples.size(); ++m) {
    for (const Complex& e : s.eigenvalues[m]) {
      out += format_double(e.real());
      out += ',';
      out += format_double(e.imag());
      out += ',';
      out += format_double(s.samples[m].real());
      out += ',';
      out += format_double(s.samples[m].imag());
      out += '\n';
    }
  }
  return out;
}

PointSet parse_points_csv(const std::string& text) {
  PointSet out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string re, im;
    if (!std::getline(row, re, ',') || !std::getline(row, im, ',')) continue;
    try {
      out.points.emplace_back(std::stod(re), std::stod(im));
    } catch (const std::exception&) {
      continue;  // header or stray text
    }
  }
  return out;
}

}  // namespace specbox

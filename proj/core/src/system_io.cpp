#include "pmpcert/system_io.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace pmpcert {

StateSpace realize_transfer(const std::vector<double>& num,
                            const std::vector<double>& den) {
  if (den.size() < 2) {
    throw ParseError("transfer: denominator degree must be >= 1");
  }
  if (den.front() == 0.0) {
    throw ParseError("transfer: leading denominator coefficient is zero");
  }
  if (num.empty() || num.size() >= den.size()) {
    throw ParseError("transfer: need 1 <= deg(num)+1 <= deg(den)");
  }
  const int n = static_cast<int>(den.size()) - 1;
  // Monic denominator s^n + d_{n-1} s^{n-1} + ... + d_0.
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) {
    d[i] = den[static_cast<size_t>(n) - i] / den.front();  // ascending
  }
  StateSpace sys;
  sys.A = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    sys.A(i, i + 1) = 1.0;
  }
  for (int j = 0; j < n; ++j) {
    sys.A(n - 1, j) = -d[j];
  }
  sys.b = Vector::Zero(n);
  sys.b(n - 1) = 1.0;
  sys.c = Vector::Zero(n);
  const int m = static_cast<int>(num.size()) - 1;  // numerator degree
  for (int i = 0; i <= m; ++i) {
    sys.c(m - i) = num[i] / den.front();  // ascending powers, zero padded
  }
  return sys;
}

namespace {

std::vector<double> parse_numbers(const std::string& text, int line_no) {
  std::istringstream iss(text);
  std::vector<double> out;
  double v;
  while (iss >> v) out.push_back(v);
  std::string rest;
  if (iss.clear(), iss >> rest) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": not a number: '" + rest + "'");
  }
  if (out.empty()) {
    throw ParseError("line " + std::to_string(line_no) + ": empty value");
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

void reject_unstable(const StateSpace& sys) {
  Eigen::EigenSolver<Matrix> es(sys.A, false);
  std::string offending;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const auto ev = es.eigenvalues()(i);
    if (ev.real() >= 0.0) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), " (%g%+gi)", ev.real(), ev.imag());
      offending += buf;
    }
  }
  if (!offending.empty()) {
    throw ParseError("system is not Hurwitz; offending eigenvalues:" +
                     offending);
  }
}

}  // namespace

SystemSpec parse_system(std::istream& in) {
  std::map<std::string, std::pair<std::string, int>> fields;
  std::string label;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'key: value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 1));
    if (fields.count(key)) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" +
                       key + "'");
    }
    fields[key] = {value, line_no};
  }
  auto take = [&](const std::string& key) {
    auto it = fields.find(key);
    if (it == fields.end()) {
      throw ParseError("missing required field '" + key + "'");
    }
    auto v = it->second;
    fields.erase(it);
    return v;
  };
  if (auto it = fields.find("label"); it != fields.end()) {
    label = it->second.first;
    fields.erase(it);
  }
  const auto [type, type_line] = take("type");

  SystemSpec spec;
  spec.label = label;
  if (type == "transfer") {
    const auto [num_text, num_line] = take("num");
    const auto [den_text, den_line] = take("den");
    spec.sys = realize_transfer(parse_numbers(num_text, num_line),
                                parse_numbers(den_text, den_line));
  } else if (type == "statespace") {
    const auto [n_text, n_line] = take("n");
    const std::vector<double> n_val = parse_numbers(n_text, n_line);
    if (n_val.size() != 1 || n_val[0] < 1 ||
        n_val[0] != std::floor(n_val[0])) {
      throw ParseError("line " + std::to_string(n_line) +
                       ": n must be a positive integer");
    }
    const int n = static_cast<int>(n_val[0]);
    const auto [a_text, a_line] = take("A");
    const auto [b_text, b_line] = take("b");
    const auto [c_text, c_line] = take("c");
    const std::vector<double> a = parse_numbers(a_text, a_line);
    const std::vector<double> b = parse_numbers(b_text, b_line);
    const std::vector<double> c = parse_numbers(c_text, c_line);
    if (static_cast<int>(a.size()) != n * n) {
      throw ParseError("line " + std::to_string(a_line) + ": A needs " +
                       std::to_string(n * n) + " entries, got " +
                       std::to_string(a.size()));
    }
    if (static_cast<int>(b.size()) != n || static_cast<int>(c.size()) != n) {
      throw ParseError("b and c need " + std::to_string(n) + " entries");
    }
    spec.sys.A = Matrix(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        spec.sys.A(i, j) = a[static_cast<size_t>(i) * n + j];
      }
    }
    spec.sys.b = Eigen::Map<const Vector>(b.data(), n);
    spec.sys.c = Eigen::Map<const Vector>(c.data(), n);
  } else {
    throw ParseError("line " + std::to_string(type_line) +
                     ": type must be 'transfer' or 'statespace'");
  }
  for (const auto& [key, v] : fields) {
    throw ParseError("line " + std::to_string(v.second) + ": unknown field '" +
                     key + "'");
  }
  reject_unstable(spec.sys);
  spec.sys.validate();
  return spec;
}

SystemSpec parse_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "'");
  }
  return parse_system(in);
}

std::string format_system(const SystemSpec& spec) {
  std::ostringstream out;
  char buf[40];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), " %.17g", v);
    out << buf;
  };
  if (!spec.label.empty()) {
    out << "label: " << spec.label << "\n";
  }
  const Eigen::Index n = spec.sys.dim();
  out << "type: statespace\n";
  out << "n: " << n << "\n";
  out << "A:";
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) put(spec.sys.A(i, j));
  }
  out << "\nb:";
  for (Eigen::Index i = 0; i < n; ++i) put(spec.sys.b(i));
  out << "\nc:";
  for (Eigen::Index i = 0; i < n; ++i) put(spec.sys.c(i));
  out << "\n";
  return out.str();
}

}  // namespace pmpcert

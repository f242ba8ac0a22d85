#include "ymlab/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "ymlab/io.hpp"

namespace ymlab {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double to_double(const std::string& s, const std::string& key) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw config_error("bad numeric value for " + key + ": '" + s + "'");
  }
}

long long to_int(const std::string& s, const std::string& key) {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw config_error("bad integer value for " + key + ": '" + s + "'");
  }
}

}  // namespace

ScenarioConfig ScenarioConfig::parse(const std::string& text) {
  ScenarioConfig c;
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string stripped = line;
    size_t hash = stripped.find('#');
    if (hash != std::string::npos) stripped = stripped.substr(0, hash);
    stripped = trim(stripped);
    if (stripped.empty()) continue;
    size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(stripped.substr(0, eq));
    std::string val = trim(stripped.substr(eq + 1));
    if (!kv.emplace(key, val).second)
      throw config_error("duplicate key '" + key + "'");
  }

  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  if (auto v = take("algebra.family")) c.algebra_family = *v;
  if (auto v = take("algebra.n")) c.algebra_n = static_cast<int>(to_int(*v, "algebra.n"));
  if (auto v = take("geometry.extents")) {
    auto parts = split_ws(*v);
    if (parts.size() != 4) throw config_error("geometry.extents needs 4 integers");
    for (int i = 0; i < 4; ++i)
      c.extents[static_cast<size_t>(i)] = static_cast<int>(to_int(parts[static_cast<size_t>(i)], "geometry.extents"));
  }
  if (auto v = take("geometry.spacing")) c.spacing = to_double(*v, "geometry.spacing");
  if (auto v = take("background.kind")) c.background_kind = *v;
  if (auto v = take("background.flux_k")) c.flux_k = static_cast<int>(to_int(*v, "background.flux_k"));
  if (auto v = take("background.strength")) c.strength = to_double(*v, "background.strength");
  if (auto v = take("background.plane")) {
    auto parts = split_ws(*v);
    if (parts.size() != 2) throw config_error("background.plane needs 2 direction indices");
    c.plane_mu = static_cast<int>(to_int(parts[0], "background.plane"));
    c.plane_nu = static_cast<int>(to_int(parts[1], "background.plane"));
  }
  if (auto v = take("background.color_dir")) {
    c.color_dir.clear();
    for (const std::string& p : split_ws(*v)) c.color_dir.push_back(to_double(p, "background.color_dir"));
  }
  if (auto v = take("background.seed")) c.background_seed = static_cast<std::uint64_t>(to_int(*v, "background.seed"));
  if (auto v = take("background.amplitude")) c.amplitude = to_double(*v, "background.amplitude");
  if (auto v = take("trace.method")) c.trace_method = *v;
  if (auto v = take("trace.probes")) c.probes = static_cast<int>(to_int(*v, "trace.probes"));
  if (auto v = take("trace.seed")) c.trace_seed = static_cast<std::uint64_t>(to_int(*v, "trace.seed"));
  if (auto v = take("fit.window")) {
    auto parts = split_ws(*v);
    if (parts.size() != 2) throw config_error("fit.window needs t_min t_max");
    c.fit_window = {{to_double(parts[0], "fit.window"), to_double(parts[1], "fit.window")}};
  }
  if (auto v = take("logdet.mu_split")) c.mu_split = to_double(*v, "logdet.mu_split");
  if (auto v = take("logdet.epsilons")) {
    c.epsilons.clear();
    for (const std::string& p : split_ws(*v)) c.epsilons.push_back(to_double(p, "logdet.epsilons"));
  }
  if (auto v = take("rg.g2_ren")) c.rg_g2_ren = to_double(*v, "rg.g2_ren");
  if (auto v = take("rg.mu")) c.rg_mu = to_double(*v, "rg.mu");
  if (auto v = take("rg.use_extracted_beta")) {
    if (*v != "true" && *v != "false") throw config_error("rg.use_extracted_beta must be true/false");
    c.rg_use_extracted_beta = (*v == "true");
  }
  if (auto v = take("output.dir")) c.output_dir = *v;
  if (auto v = take("workers")) c.workers = static_cast<int>(to_int(*v, "workers"));

  if (!kv.empty()) throw config_error("unknown key '" + kv.begin()->first + "'");
  c.validate();
  return c;
}

ScenarioConfig ScenarioConfig::load(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw config_error("cannot open config " + path.string());
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse(buf.str());
}

std::string ScenarioConfig::serialize() const {
  std::ostringstream os;
  os << "algebra.family = " << algebra_family << "\n";
  os << "algebra.n = " << algebra_n << "\n";
  os << "geometry.extents = " << extents[0] << " " << extents[1] << " " << extents[2] << " "
     << extents[3] << "\n";
  os << "geometry.spacing = " << fmt17(spacing) << "\n";
  os << "background.kind = " << background_kind << "\n";
  if (flux_k) os << "background.flux_k = " << *flux_k << "\n";
  os << "background.strength = " << fmt17(strength) << "\n";
  os << "background.plane = " << plane_mu << " " << plane_nu << "\n";
  if (!color_dir.empty()) {
    os << "background.color_dir =";
    for (double v : color_dir) os << " " << fmt17(v);
    os << "\n";
  }
  os << "background.seed = " << background_seed << "\n";
  os << "background.amplitude = " << fmt17(amplitude) << "\n";
  os << "trace.method = " << trace_method << "\n";
  os << "trace.probes = " << probes << "\n";
  os << "trace.seed = " << trace_seed << "\n";
  if (fit_window) os << "fit.window = " << fmt17((*fit_window)[0]) << " " << fmt17((*fit_window)[1]) << "\n";
  if (mu_split) os << "logdet.mu_split = " << fmt17(*mu_split) << "\n";
  os << "logdet.epsilons =";
  for (double e : epsilons) os << " " << fmt17(e);
  os << "\n";
  os << "rg.g2_ren = " << fmt17(rg_g2_ren) << "\n";
  if (rg_mu) os << "rg.mu = " << fmt17(*rg_mu) << "\n";
  os << "rg.use_extracted_beta = " << (rg_use_extracted_beta ? "true" : "false") << "\n";
  if (!output_dir.empty()) os << "output.dir = " << output_dir.string() << "\n";
  os << "workers = " << workers << "\n";
  return os.str();
}

void ScenarioConfig::save(const std::filesystem::path& path) const {
  std::ofstream os(path);
  if (!os) throw config_error("cannot write config " + path.string());
  os << serialize();
}

void ScenarioConfig::validate() const {
  if (algebra_family != "su") throw config_error("algebra.family must be 'su'");
  if (algebra_n < 2) throw config_error("algebra.n must be >= 2");
  for (int e : extents)
    if (e < 2) throw config_error("geometry.extents must all be >= 2");
  if (spacing <= 0) throw config_error("geometry.spacing must be positive");
  if (background_kind != "zero" && background_kind != "constant_abelian" &&
      background_kind != "random_smooth")
    throw config_error("background.kind must be zero|constant_abelian|random_smooth");
  if (background_kind == "constant_abelian") {
    if (plane_mu == plane_nu || plane_mu < 0 || plane_nu < 0 || plane_mu > 3 || plane_nu > 3)
      throw config_error("background.plane must name two distinct directions 0..3");
  }
  if (trace_method != "exact" && trace_method != "stochastic")
    throw config_error("trace.method must be exact|stochastic");
  if (trace_method == "stochastic" && probes < 2)
    throw config_error("trace.probes must be >= 2");
  if (trace_method == "exact") {
    const int d = algebra_n * algebra_n - 1;
    std::int64_t dim = 4 * d;
    for (int e : extents) dim *= e;
    if (dim > 20000)
      throw config_error("exact traces limited to operator dimension <= 20000 (M1 here: " +
                         std::to_string(dim) + ")");
  }
  if (fit_window && !((*fit_window)[0] > 0 && (*fit_window)[1] > (*fit_window)[0]))
    throw config_error("fit.window must satisfy 0 < t_min < t_max");
  if (epsilons.empty()) throw config_error("logdet.epsilons must not be empty");
  for (double e : epsilons) {
    if (e <= 0) throw config_error("logdet.epsilons must be positive");
    if (mu_split && e >= *mu_split) throw config_error("logdet.epsilons must be < logdet.mu_split");
    if (fit_window && e >= (*fit_window)[1])
      throw config_error("logdet.epsilons must be below the fit window ceiling");
  }
  if (rg_g2_ren <= 0) throw config_error("rg.g2_ren must be positive");
  if (workers < 0) throw config_error("workers must be >= 0");
}

}  // namespace ymlab

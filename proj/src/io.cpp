#include "barron/io.hpp"

#include <charconv>
#include <fstream>
#include <string>

namespace barron {

namespace {

nlohmann::json vec_to_json(const Eigen::VectorXd& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vec_from_json(const nlohmann::json& a, const char* what) {
  if (!a.is_array()) throw config_error(std::string(what) + ": expected an array of numbers");
  Eigen::VectorXd v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) throw config_error(std::string(what) + ": expected numbers");
    v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
  }
  return v;
}

DomainBox box_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_object() || !j.contains("lower") || !j.contains("upper"))
    throw config_error(std::string(what) + ": expected {\"lower\": [...], \"upper\": [...]}");
  DomainBox box;
  box.lower = vec_from_json(j["lower"], what);
  box.upper = vec_from_json(j["upper"], what);
  box.validate();
  return box;
}

nlohmann::json box_to_json(const DomainBox& box) {
  return nlohmann::json{{"lower", vec_to_json(box.lower)}, {"upper", vec_to_json(box.upper)}};
}

// Wraps nlohmann's typed accessors so schema violations surface as
// config_error with the offending key in the message.
template <typename T>
T get_field(const nlohmann::json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw config_error(std::string(what) + ": missing field \"" + key + "\"");
  try {
    return j[key].get<T>();
  } catch (const nlohmann::json::exception&) {
    throw config_error(std::string(what) + ": field \"" + key + "\" has the wrong type");
  }
}

}  // namespace

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw config_error("failed writing " + path);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

nlohmann::json network_to_json(const NeuralNetwork& net, const nlohmann::json& meta) {
  nlohmann::json layers = nlohmann::json::array();
  for (const Layer& lay : net.layers()) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < lay.W.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < lay.W.cols(); ++c) row.push_back(lay.W(r, c));
      rows.push_back(std::move(row));
    }
    layers.push_back({{"weights", std::move(rows)}, {"bias", vec_to_json(lay.b)}});
  }
  return nlohmann::json{{"input_dim", net.input_dim()},
                        {"layers", std::move(layers)},
                        {"activation", "relu"},
                        {"meta", meta}};
}

NeuralNetwork network_from_json(const nlohmann::json& j) {
  const int input_dim = get_field<int>(j, "input_dim", "network");
  if (get_field<std::string>(j, "activation", "network") != "relu")
    throw config_error("network: only the \"relu\" activation is supported");
  if (!j.contains("layers") || !j["layers"].is_array() || j["layers"].empty())
    throw config_error("network: missing non-empty \"layers\" array");
  std::vector<Layer> layers;
  for (const nlohmann::json& jl : j["layers"]) {
    if (!jl.is_object() || !jl.contains("weights") || !jl["weights"].is_array() ||
        jl["weights"].empty())
      throw config_error("network: each layer needs a non-empty \"weights\" matrix");
    const nlohmann::json& rows = jl["weights"];
    Layer lay;
    const Eigen::Index nrows = static_cast<Eigen::Index>(rows.size());
    for (Eigen::Index r = 0; r < nrows; ++r) {
      const Eigen::VectorXd row = vec_from_json(rows[static_cast<std::size_t>(r)], "network");
      if (r == 0) lay.W.resize(nrows, row.size());
      if (row.size() != lay.W.cols())
        throw config_error("network: ragged weight matrix");
      lay.W.row(r) = row.transpose();
    }
    if (!jl.contains("bias"))
      throw config_error("network: each layer needs a \"bias\" vector");
    lay.b = vec_from_json(jl["bias"], "network");
    layers.push_back(std::move(lay));
  }
  return NeuralNetwork(input_dim, std::move(layers));
}

void save_network(const std::string& path, const NeuralNetwork& net,
                  const nlohmann::json& meta) {
  write_json_file(path, network_to_json(net, meta));
}

NeuralNetwork load_network(const std::string& path) {
  return network_from_json(read_json_file(path));
}

nlohmann::json barron_spec_to_json(const BarronFunctionSpec& f) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const SpectralAtom& a : f.atoms)
    atoms.push_back({{"freq", vec_to_json(a.freq)}, {"modulus", a.modulus}, {"phase", a.phase}});
  return nlohmann::json{{"domain", box_to_json(f.domain)},
                        {"base_point", vec_to_json(f.base_point)},
                        {"constant", f.constant},
                        {"atoms", std::move(atoms)}};
}

BarronFunctionSpec barron_spec_from_json(const nlohmann::json& j) {
  BarronFunctionSpec f;
  if (!j.contains("domain")) throw config_error("spectral spec: missing field \"domain\"");
  f.domain = box_from_json(j["domain"], "spectral spec domain");
  if (!j.contains("base_point"))
    throw config_error("spectral spec: missing field \"base_point\"");
  f.base_point = vec_from_json(j["base_point"], "spectral spec base_point");
  f.constant = get_field<double>(j, "constant", "spectral spec");
  if (!j.contains("atoms") || !j["atoms"].is_array())
    throw config_error("spectral spec: missing \"atoms\" array");
  for (const nlohmann::json& ja : j["atoms"]) {
    SpectralAtom a;
    if (!ja.contains("freq")) throw config_error("spectral spec: atom missing \"freq\"");
    a.freq = vec_from_json(ja["freq"], "spectral spec atom freq");
    a.modulus = get_field<double>(ja, "modulus", "spectral spec atom");
    a.phase = get_field<double>(ja, "phase", "spectral spec atom");
    f.atoms.push_back(std::move(a));
  }
  f.validate();
  return f;
}

void save_barron_spec(const std::string& path, const BarronFunctionSpec& f) {
  write_json_file(path, barron_spec_to_json(f));
}

BarronFunctionSpec load_barron_spec(const std::string& path) {
  return barron_spec_from_json(read_json_file(path));
}

nlohmann::json boundary_set_to_json(const BarronBoundarySet& omega) {
  nlohmann::json patches = nlohmann::json::array();
  for (const HorizonPatch& p : omega.patches)
    patches.push_back({{"rect", box_to_json(p.rect)},
                       {"axis", p.axis},
                       {"sign", p.sign},
                       {"B", p.constant_B},
                       {"boundary", barron_spec_to_json(p.boundary)}});
  return nlohmann::json{{"dim", omega.dim}, {"patches", std::move(patches)}};
}

BarronBoundarySet boundary_set_from_json(const nlohmann::json& j) {
  BarronBoundarySet omega;
  omega.dim = get_field<int>(j, "dim", "boundary set");
  if (!j.contains("patches") || !j["patches"].is_array())
    throw config_error("boundary set: missing \"patches\" array");
  for (const nlohmann::json& jp : j["patches"]) {
    HorizonPatch p;
    if (!jp.contains("rect")) throw config_error("boundary set: patch missing \"rect\"");
    p.rect = box_from_json(jp["rect"], "boundary set rect");
    p.axis = get_field<int>(jp, "axis", "boundary set patch");
    p.sign = get_field<int>(jp, "sign", "boundary set patch");
    p.constant_B = get_field<double>(jp, "B", "boundary set patch");
    if (!jp.contains("boundary"))
      throw config_error("boundary set: patch missing \"boundary\"");
    p.boundary = barron_spec_from_json(jp["boundary"]);
    omega.patches.push_back(std::move(p));
  }
  omega.validate();
  return omega;
}

void save_boundary_set(const std::string& path, const BarronBoundarySet& omega) {
  write_json_file(path, boundary_set_to_json(omega));
}

BarronBoundarySet load_boundary_set(const std::string& path) {
  return boundary_set_from_json(read_json_file(path));
}

nlohmann::json measure_to_json(const MeasureSpec& mu) {
  switch (mu.kind) {
    case MeasureSpec::Kind::uniform_box:
      return nlohmann::json{{"kind", "uniform_box"}, {"box", box_to_json(mu.box)}};
    case MeasureSpec::Kind::product_marginals: {
      nlohmann::json marg = nlohmann::json::array();
      for (const MarginalTable& t : mu.marginals)
        marg.push_back({{"x", vec_to_json(t.x)}, {"cdf", vec_to_json(t.cdf)}});
      return nlohmann::json{
          {"kind", "product_marginals"}, {"alpha", mu.alpha}, {"marginals", std::move(marg)}};
    }
    case MeasureSpec::Kind::density_weighted: {
      if (!mu.density.name.empty())
        return nlohmann::json{{"kind", "density_weighted"},
                              {"base", measure_to_json(*mu.base)},
                              {"density", {{"name", mu.density.name}, {"a", mu.density.a}}},
                              {"sup", mu.density.sup}};
      throw config_error("measure: ad-hoc densities cannot be serialized");
    }
  }
  throw config_error("measure: unknown kind");
}

MeasureSpec measure_from_json(const nlohmann::json& j) {
  const std::string kind = get_field<std::string>(j, "kind", "measure");
  if (kind == "uniform_box") {
    if (!j.contains("box")) throw config_error("measure: missing \"box\"");
    return MeasureSpec::uniform(box_from_json(j["box"], "measure box"));
  }
  if (kind == "product_marginals") {
    const double alpha = get_field<double>(j, "alpha", "measure");
    if (!j.contains("marginals") || !j["marginals"].is_array())
      throw config_error("measure: missing \"marginals\" array");
    std::vector<MarginalTable> marg;
    for (const nlohmann::json& jt : j["marginals"]) {
      MarginalTable t;
      if (!jt.contains("x") || !jt.contains("cdf"))
        throw config_error("measure: each marginal needs \"x\" and \"cdf\"");
      t.x = vec_from_json(jt["x"], "measure marginal x");
      t.cdf = vec_from_json(jt["cdf"], "measure marginal cdf");
      marg.push_back(std::move(t));
    }
    MeasureSpec mu = MeasureSpec::product(std::move(marg), alpha);
    mu.validate();
    return mu;
  }
  if (kind == "density_weighted") {
    if (!j.contains("base")) throw config_error("measure: missing \"base\"");
    MeasureSpec base = measure_from_json(j["base"]);
    if (!j.contains("density"))
      throw config_error("measure: missing \"density\"");
    const std::string name = get_field<std::string>(j["density"], "name", "measure density");
    const double a = get_field<double>(j["density"], "a", "measure density");
    MeasureSpec mu = MeasureSpec::weighted(std::move(base), DensitySpec::named(name, a));
    mu.validate();
    return mu;
  }
  throw config_error("measure: unknown kind \"" + kind + "\"");
}

void save_measure(const std::string& path, const MeasureSpec& mu) {
  write_json_file(path, measure_to_json(mu));
}

MeasureSpec load_measure(const std::string& path) {
  return measure_from_json(read_json_file(path));
}

}  // namespace barron

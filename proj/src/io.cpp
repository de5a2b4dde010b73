#include "voxelvol/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace voxelvol {

using nlohmann::json;

void write_bvox(const std::string& path, const BinaryImage& img) {
  json header;
  header["dims"] = std::vector<int>(img.dims.begin(), img.dims.begin() + img.dim);
  header["a"] = img.pose.a;
  std::vector<std::vector<double>> rot(img.dim, std::vector<double>(img.dim));
  for (int i = 0; i < img.dim; ++i)
    for (int j = 0; j < img.dim; ++j) rot[i][j] = img.pose.R(i, j);
  header["R"] = rot;
  header["c"] = std::vector<double>(img.pose.c.begin(), img.pose.c.begin() + img.dim);
  header["origin"] =
      std::vector<std::int64_t>(img.origin.begin(), img.origin.begin() + img.dim);
  header["packing"] = "row-major-lsb";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << header.dump() << "\n";
  out.write(reinterpret_cast<const char*>(img.bits.data()),
            static_cast<std::streamsize>(img.bits.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

BinaryImage read_bvox(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string header_line;
  if (!std::getline(in, header_line)) throw std::runtime_error("missing BVOX header");
  json header = json::parse(header_line);
  if (header.value("packing", "") != "row-major-lsb")
    throw std::runtime_error("unsupported BVOX packing");

  BinaryImage img;
  std::vector<int> dims = header.at("dims").get<std::vector<int>>();
  img.dim = static_cast<int>(dims.size());
  if (img.dim != 2 && img.dim != 3) throw std::runtime_error("unsupported BVOX dimension");
  for (int k = 0; k < img.dim; ++k) img.dims[k] = dims[k];
  img.pose.dim = img.dim;
  img.pose.a = header.at("a").get<double>();
  auto rot = header.at("R").get<std::vector<std::vector<double>>>();
  for (int i = 0; i < img.dim; ++i)
    for (int j = 0; j < img.dim; ++j) img.pose.R(i, j) = rot.at(i).at(j);
  auto c = header.at("c").get<std::vector<double>>();
  for (int k = 0; k < img.dim; ++k) img.pose.c[k] = c.at(k);
  auto origin = header.at("origin").get<std::vector<std::int64_t>>();
  for (int k = 0; k < img.dim; ++k) img.origin[k] = origin.at(k);

  img.allocate();
  in.read(reinterpret_cast<char*>(img.bits.data()),
          static_cast<std::streamsize>(img.bits.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.bits.size()))
    throw std::runtime_error("truncated BVOX payload");
  return img;
}

Phantom phantom_from_json(const json& j) {
  std::string variant = j.at("variant").get<std::string>();
  int dim = j.value("d", 3);
  double r = j.at("r").get<double>();
  auto read_vec = [&](const json& v) {
    Vec3 out{0, 0, 0};
    for (std::size_t k = 0; k < v.size() && k < 3; ++k) out[k] = v[k].get<double>();
    return out;
  };
  Vec3 center = j.contains("center") ? read_vec(j["center"]) : Vec3{0, 0, 0};
  if (variant == "ball") return Phantom::ball(dim, center, r);
  if (variant == "capsule") {
    Vec3 u = normalized(read_vec(j.at("u")));
    double t = j.at("t").get<double>();
    return Phantom::capsule(dim, center, u, t, r);
  }
  if (variant == "orthobody") {
    std::vector<Vec3> axes;
    for (const auto& u : j.at("u")) axes.push_back(normalized(read_vec(u)));
    std::vector<double> lengths = j.at("t").get<std::vector<double>>();
    return Phantom::ortho_body(dim, center, axes, lengths, r);
  }
  throw std::invalid_argument("unknown phantom variant: " + variant);
}

json phantom_to_json(const Phantom& ph) {
  json j;
  j["d"] = ph.dim;
  j["r"] = ph.r;
  j["center"] = std::vector<double>(ph.base.begin(), ph.base.begin() + ph.dim);
  switch (ph.kind) {
    case PhantomKind::Ball:
      j["variant"] = "ball";
      break;
    case PhantomKind::Capsule: {
      j["variant"] = "capsule";
      j["u"] = std::vector<double>(ph.axes[0].begin(), ph.axes[0].begin() + ph.dim);
      j["t"] = ph.lengths[0];
      break;
    }
    case PhantomKind::OrthoBody: {
      j["variant"] = "orthobody";
      std::vector<std::vector<double>> us;
      for (const auto& u : ph.axes)
        us.emplace_back(u.begin(), u.begin() + ph.dim);
      j["u"] = us;
      j["t"] = ph.lengths;
      break;
    }
  }
  return j;
}

WeightVector weights_from_json(const json& j, const ClassPartition& part) {
  WeightVector wv;
  wv.target_index = j.at("i").get<int>();
  wv.dim = j.at("d").get<int>();
  wv.w.assign(part.classes.size(), 0.0);
  for (const auto& [key, value] : j.at("weights").items()) {
    int id;
    try {
      id = std::stoi(key);
    } catch (...) {
      id = part.id_of_label(key);
    }
    wv.w.at(id) = value.get<double>();
  }
  wv.validate(part);
  return wv;
}

json weights_to_json(const WeightVector& wv) {
  json weights = json::object();
  for (std::size_t j = 0; j < wv.w.size(); ++j)
    if (wv.w[j] != 0.0) weights[std::to_string(j)] = wv.w[j];
  return json{{"i", wv.target_index}, {"d", wv.dim}, {"weights", weights}};
}

DesignSpec design_from_json(const json& j, const ClassPartition& part) {
  DesignSpec d;
  d.phantom = phantom_from_json(j.at("phantom"));
  d.weights = weights_from_json(j.at("weights"), part);
  std::string mode = j.value("mode", "stationary");
  if (mode == "stationary") d.mode = SamplingMode::Stationary;
  else if (mode == "isotropic") d.mode = SamplingMode::Isotropic;
  else throw std::invalid_argument("unknown sampling mode: " + mode);
  d.spacings = j.at("spacings").get<std::vector<double>>();
  d.replicates = j.at("replicates").get<int>();
  d.seed = j.value("seed", 1ull);
  d.margin_factor = j.value("margin_factor", 2.0);
  d.validate();
  return d;
}

json design_to_json(const DesignSpec& d) {
  return json{{"phantom", phantom_to_json(d.phantom)},
              {"weights", weights_to_json(d.weights)},
              {"mode", d.mode == SamplingMode::Stationary ? "stationary" : "isotropic"},
              {"spacings", d.spacings},
              {"replicates", d.replicates},
              {"seed", d.seed},
              {"margin_factor", d.margin_factor}};
}

json classes_to_json(const ClassPartition& part) {
  json classes = json::array();
  for (const auto& c : part.classes) {
    json jc;
    jc["id"] = c.id;
    jc["representative_mask"] = c.representative;
    jc["members"] = c.members;
    jc["separable"] = c.separable;
    if (!c.label.empty()) jc["label"] = c.label;
    classes.push_back(jc);
  }
  return json{{"d", part.dim}, {"classes", classes}};
}

std::string classes_to_csv(const ClassPartition& part) {
  std::ostringstream out;
  out << "id,representative_mask,size,separable,label\n";
  for (const auto& c : part.classes)
    out << c.id << "," << c.representative << "," << c.members.size() << ","
        << (c.separable ? 1 : 0) << "," << c.label << "\n";
  return out.str();
}

std::string histogram_to_csv(const ConfigHistogram& hist) {
  std::ostringstream out;
  out << "l,count\n";
  for (std::size_t l = 0; l < hist.counts.size(); ++l)
    out << l << "," << hist.counts[l] << "\n";
  return out.str();
}

std::string coefficients_to_csv(const CoefficientTable& table) {
  std::ostringstream out;
  out << "class,phi_bar,psi_bar,lambda_bar,mu_bar,provenance,err\n";
  out.precision(15);
  for (const auto& e : table.entries) {
    out << e.class_id << ",";
    if (e.phi_bar) out << *e.phi_bar;
    out << "," << e.psi_bar << ",";
    if (e.lambda_bar) out << *e.lambda_bar;
    out << "," << e.mu_bar << "," << e.provenance << "," << e.err << "\n";
  }
  return out.str();
}

std::string results_to_csv(const ExperimentResult& res) {
  std::ostringstream out;
  out << "a,replicate,estimate\n";
  out.precision(15);
  for (const auto& r : res.records)
    out << r.a << "," << r.replicate << "," << r.estimate << "\n";
  return out.str();
}

std::string summary_to_csv(const ExperimentResult& res) {
  std::ostringstream out;
  out << "a,mean,stderr,n\n";
  out.precision(15);
  for (const auto& s : res.summary)
    out << s.a << "," << s.mean << "," << s.std_error << "," << s.n << "\n";
  return out.str();
}

json fit_to_json(const FitResult& fit) {
  return json{{"c_minus1", fit.c_minus1},
              {"c0", fit.c0},
              {"residual", fit.residual},
              {"ci",
               {{"c_minus1", {fit.c_minus1 - 1.96 * fit.sd_cminus1,
                              fit.c_minus1 + 1.96 * fit.sd_cminus1}},
                {"c0", {fit.c0 - 1.96 * fit.sd_c0, fit.c0 + 1.96 * fit.sd_c0}}}},
              {"sd", {{"c_minus1", fit.sd_cminus1}, {"c0", fit.sd_c0}}}};
}

json feasibility_to_json(const LinearSystem& sys, const Feasibility& f) {
  return json{{"labels", sys.labels},
              {"feasible", f.feasible},
              {"rank", f.rank},
              {"residual", f.residual},
              {"tolerance", f.tolerance},
              {"solution", f.solution}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace voxelvol

#include "wovf/io.hpp"

#include <fstream>
#include <sstream>

namespace wovf {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t as_index(const json& j) {
  if (!j.is_number_unsigned()) throw InputError("expected a nonnegative integer");
  return j.get<std::size_t>();
}

double as_real(const json& j) {
  if (!j.is_number()) throw InputError("expected a number");
  return j.get<double>();
}

std::vector<Op> ops_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of matrices");
  std::vector<Op> out;
  for (const json& m : j) out.push_back(op_from_json(m));
  return out;
}

json ops_to_json(const std::vector<Op>& ops) {
  json out = json::array();
  for (const Op& x : ops) out.push_back(op_to_json(x));
  return out;
}

json phased_to_json(const Phased& p) { return json::array({p.turn, p.index}); }

Phased phased_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InputError("phased entry must be [turn, index]");
  return {as_index(j[0]), as_index(j[1])};
}

std::vector<std::string> names_from_json(const json& j) {
  if (!j.contains("names")) return {};
  std::vector<std::string> out;
  for (const json& s : j.at("names")) {
    if (!s.is_string()) throw InputError("names must be strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

Tolerance tolerance_from_json(const json& j) {
  Tolerance tol;
  if (j.contains("residual_eps")) tol.residual_eps = as_real(j.at("residual_eps"));
  if (j.contains("invert_eps")) tol.invert_eps = as_real(j.at("invert_eps"));
  try {
    tol.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return tol;
}

FiniteGroup group_from_json(const json& j) {
  const std::size_t order = as_index(field(j, "order"));
  const json& rows = field(j, "mul");
  if (!rows.is_array() || rows.size() != order) throw InputError("group table has the wrong size");
  std::vector<std::vector<std::size_t>> mul;
  for (const json& row : rows) {
    if (!row.is_array()) throw InputError("group table rows must be arrays");
    std::vector<std::size_t> r;
    for (const json& x : row) r.push_back(as_index(x));
    mul.push_back(std::move(r));
  }
  try {
    return FiniteGroup::from_table(std::move(mul), names_from_json(j));
  } catch (const InvalidSystem& e) {
    throw InputError(std::string("invalid group: ") + e.what());
  }
}

GroupLikeSystem system_from_json(const json& j) {
  const std::size_t size = as_index(field(j, "size"));
  const std::size_t m = as_index(field(j, "phase_order"));
  const json& rows = field(j, "mul");
  const json& inv = field(j, "inv");
  if (!rows.is_array() || rows.size() != size || !inv.is_array() || inv.size() != size)
    throw InputError("system tables have the wrong size");
  std::vector<std::vector<Phased>> mul;
  for (const json& row : rows) {
    if (!row.is_array()) throw InputError("system table rows must be arrays");
    std::vector<Phased> r;
    for (const json& x : row) r.push_back(phased_from_json(x));
    mul.push_back(std::move(r));
  }
  std::vector<Phased> inverses;
  for (const json& x : inv) inverses.push_back(phased_from_json(x));
  try {
    return GroupLikeSystem(m, std::move(mul), std::move(inverses), names_from_json(j));
  } catch (const InvalidSystem& e) {
    throw InputError(std::string("invalid system: ") + e.what());
  }
}

}  // namespace

json op_to_json(const Op& x) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < x.cols(); ++c)
      row.push_back(json::array({x(r, c).real(), x(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Op op_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw InputError("matrix rows must be nonempty arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Op x(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InputError("matrix rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2) throw InputError("entries must be [re, im] pairs");
      x(r, c) = Complex(as_real(e[0]), as_real(e[1]));
    }
  }
  return x;
}

json to_json(const FrameFile& file) {
  const WeakOvf& f = file.frame;
  json j;
  j["version"] = kFrameVersion;
  j["dims"] = {{"d", f.d()}, {"d0", f.d0()}, {"N", f.size()}};
  j["A"] = ops_to_json(f.As());
  j["Psi"] = ops_to_json(f.Psis());
  if (file.tolerance)
    j["tolerance"] = {{"residual_eps", file.tolerance->residual_eps},
                      {"invert_eps", file.tolerance->invert_eps}};
  if (file.group) {
    const FiniteGroup& g = *file.group;
    j["group"] = {{"order", g.order()}, {"mul", g.table()}};
    if (!g.names().empty()) j["group"]["names"] = g.names();
  }
  if (file.grouplike) {
    const GroupLikeSystem& s = *file.grouplike;
    json mul = json::array();
    for (const auto& row : s.table()) {
      json r = json::array();
      for (const Phased& p : row) r.push_back(phased_to_json(p));
      mul.push_back(std::move(r));
    }
    json inv = json::array();
    for (const Phased& p : s.inverses()) inv.push_back(phased_to_json(p));
    j["grouplike"] = {{"size", s.size()}, {"phase_order", s.phase_order()}, {"mul", mul},
                      {"inv", inv}};
    if (!s.names().empty()) j["grouplike"]["names"] = s.names();
  }
  if (file.perturbation) j["perturbation"] = {{"B", ops_to_json(*file.perturbation)}};
  if (file.embed) j["dilation"] = {{"embed", op_to_json(*file.embed)}};
  return j;
}

FrameFile frame_file_from_json(const json& j) {
  try {
    if (!j.is_object()) throw InputError("frame file must be a JSON object");
    const json& version = field(j, "version");
    if (!version.is_string() || version.get<std::string>() != kFrameVersion)
      throw InputError(std::string("unsupported version, expected ") + kFrameVersion);
    const json& dims = field(j, "dims");
    const std::size_t d = as_index(field(dims, "d"));
    const std::size_t d0 = as_index(field(dims, "d0"));
    const std::size_t n = as_index(field(dims, "N"));

    std::optional<Tolerance> tol;
    if (j.contains("tolerance")) tol = tolerance_from_json(j.at("tolerance"));
    std::vector<Op> a = ops_from_json(field(j, "A"));
    std::vector<Op> psi = ops_from_json(field(j, "Psi"));
    if (a.size() != n || psi.size() != n) throw InputError("sequence length differs from dims.N");
    for (const auto* seq : {&a, &psi})
      for (const Op& x : *seq)
        if (static_cast<std::size_t>(x.rows()) != d0 || static_cast<std::size_t>(x.cols()) != d)
          throw InputError("operator shape differs from dims (d0 x d)");

    FrameFile file{WeakOvf(std::move(a), std::move(psi), tol.value_or(Tolerance{})), tol, {}, {},
                   {}, {}};
    if (j.contains("group")) file.group = group_from_json(j.at("group"));
    if (j.contains("grouplike")) file.grouplike = system_from_json(j.at("grouplike"));
    if (j.contains("perturbation")) {
      std::vector<Op> b = ops_from_json(field(j.at("perturbation"), "B"));
      if (b.size() != n) throw InputError("perturbation length differs from dims.N");
      for (const Op& x : b)
        if (static_cast<std::size_t>(x.rows()) != d0 || static_cast<std::size_t>(x.cols()) != d)
          throw InputError("perturbation shape differs from dims");
      file.perturbation = std::move(b);
    }
    if (j.contains("dilation")) file.embed = op_from_json(field(j.at("dilation"), "embed"));
    return file;
  } catch (const ShapeMismatch& e) {
    throw InputError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(e.what());
  }
}

std::string serialize(const FrameFile& file) { return to_json(file).dump(1) + "\n"; }

FrameFile parse_frame_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(e.what());
  }
  return frame_file_from_json(j);
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

FrameFile read_frame_file(const std::string& path) { return frame_file_from_json(read_json(path)); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

json witness_to_json(const SimilarityWitness& w) {
  return {{"version", kWitnessVersion},
          {"R_AB", op_to_json(w.R_AB)},
          {"R_PsiPhi", op_to_json(w.R_PsiPhi)},
          {"residual", w.residual},
          {"p_residual", w.p_residual}};
}

json representation_to_json(const Representation& rep) {
  return {{"version", kRepresentationVersion},
          {"kind", "group"},
          {"order", rep.group.order()},
          {"residual", rep.residual()},
          {"pi", ops_to_json(rep.pi)}};
}

json representation_to_json(const GroupLikeRepresentation& rep) {
  return {{"version", kRepresentationVersion},
          {"kind", "grouplike"},
          {"size", rep.system.size()},
          {"phase_order", rep.system.phase_order()},
          {"residual", rep.residual()},
          {"separation", rep.separation()},
          {"pi", ops_to_json(rep.pi)}};
}

}  // namespace wovf

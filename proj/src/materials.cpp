#include "iedm/materials.hpp"

#include <charconv>
#include <exception>
#include <cmath>
#include <string>

#include "iedm/error.hpp"

#ifdef IEDM_HAVE_OPENMP
#include <omp.h>
#endif

namespace iedm::materials {

// Generated at configure time from data/elements.tsv and data/compounds.tsv.
extern const char* const kElementTable;
extern const char* const kCompoundTable;

namespace {

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
    line.remove_suffix(1);
  while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
  return line;
}

// Splits off up to `max_fields` fields; the remainder (if any) is returned as
// the last element untouched.
std::vector<std::string> split_fields(std::string_view line, std::string_view seps,
                                      std::size_t max_fields) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size() && out.size() < max_fields) {
    while (i < line.size() && seps.find(line[i]) != std::string_view::npos) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && seps.find(line[j]) == std::string_view::npos) ++j;
    out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  while (i < line.size() && seps.find(line[i]) != std::string_view::npos) ++i;
  if (i < line.size()) out.emplace_back(line.substr(i));
  return out;
}

double parse_double(const std::string& s, std::size_t line_no, const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidMaterial, "line " + std::to_string(line_no) + ": invalid " +
                                                what + " '" + s + "'");
  }
}

void check_element(const ElementProps& e) {
  auto bad = [&](const std::string& why) {
    throw Error(ErrorCode::InvalidMaterial, "element " + e.symbol + ": " + why);
  };
  if (e.symbol.empty()) bad("empty symbol");
  if (e.z < 1) bad("Z must be >= 1");
  for (double v : {e.a, e.density, e.x0, e.lambda_t, e.lambda_i})
    if (!(v > 0.0) || !std::isfinite(v)) bad("physical quantities must be positive");
  double ratio = e.lambda_i / e.lambda_t;
  if (ratio > 10.0 || ratio < 0.1) bad("lambdaI and lambdaT differ by more than a factor 10");
}

}  // namespace

Material Material::element(std::string symbol) {
  Material m;
  m.name = symbol;
  m.composition = std::move(symbol);
  return m;
}

Material Material::compound(std::string name, double density,
                            std::vector<std::pair<Material, double>> parts) {
  if (parts.empty())
    throw Error(ErrorCode::InvalidMaterial, "compound " + name + " has no components");
  if (!(density > 0.0) || !std::isfinite(density))
    throw Error(ErrorCode::InvalidMaterial, "compound " + name + " needs a positive density");
  double sum = 0.0;
  std::vector<Component> components;
  for (auto& [m, w] : parts) {
    if (!(w >= 0.0) || w > 1.0)
      throw Error(ErrorCode::InvalidMaterial, "compound " + name + ": mass fraction out of range");
    sum += w;
    components.push_back({std::move(m), w});
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error(ErrorCode::InvalidMaterial,
                "compound " + name + ": mass fractions sum to " + std::to_string(sum));
  Material out;
  out.name = std::move(name);
  out.composition = std::move(components);
  out.density = density;
  return out;
}

double OccupancyTriple::get(LengthKind kind) const {
  switch (kind) {
    case LengthKind::Radiation: return radiation;
    case LengthKind::Collision: return collision;
    case LengthKind::Interaction: return interaction;
  }
  return 0.0;
}

MaterialTable MaterialTable::parse_elements(std::string_view text) {
  MaterialTable table;
  auto lines = lines_of(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    auto line = strip_comment(lines[n]);
    if (line.empty()) continue;
    auto f = split_fields(line, "\t, ", 7);
    if (f.size() < 7)
      throw Error(ErrorCode::InvalidMaterial,
                  "line " + std::to_string(n + 1) + ": expected 7 columns, got " +
                      std::to_string(f.size()));
    ElementProps e;
    e.symbol = f[0];
    double z = parse_double(f[1], n + 1, "Z");
    if (z != std::floor(z))
      throw Error(ErrorCode::InvalidMaterial, "line " + std::to_string(n + 1) + ": Z not integral");
    e.z = static_cast<int>(z);
    e.a = parse_double(f[2], n + 1, "A");
    e.density = parse_double(f[3], n + 1, "density");
    e.x0 = parse_double(f[4], n + 1, "X0");
    e.lambda_t = parse_double(f[5], n + 1, "lambdaT");
    e.lambda_i = parse_double(f[6], n + 1, "lambdaI");
    if (f.size() > 7) e.source = f[7];
    table.add_element(std::move(e));
  }
  return table;
}

void MaterialTable::parse_compounds(std::string_view text) {
  auto lines = lines_of(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    auto line = strip_comment(lines[n]);
    if (line.empty()) continue;
    auto f = split_fields(line, "\t ", 3);
    if (f.size() < 3)
      throw Error(ErrorCode::InvalidMaterial,
                  "line " + std::to_string(n + 1) + ": expected name, density, components");
    double density = parse_double(f[1], n + 1, "density");
    std::vector<std::pair<Material, double>> parts;
    std::string_view comps = f[2];
    while (!comps.empty()) {
      auto comma = comps.find(',');
      auto item = comps.substr(0, comma);
      auto colon = item.find(':');
      if (colon == std::string_view::npos)
        throw Error(ErrorCode::InvalidMaterial,
                    "line " + std::to_string(n + 1) + ": component needs name:fraction");
      parts.emplace_back(resolve(item.substr(0, colon)),
                         parse_double(std::string(item.substr(colon + 1)), n + 1, "fraction"));
      comps = comma == std::string_view::npos ? std::string_view{} : comps.substr(comma + 1);
    }
    add_compound(Material::compound(f[0], density, std::move(parts)));
  }
}

void MaterialTable::add_element(ElementProps e) {
  check_element(e);
  std::string key = e.symbol;
  elements_[key] = std::move(e);
}

void MaterialTable::add_compound(Material m) {
  if (m.is_element())
    throw Error(ErrorCode::InvalidMaterial, "add_compound expects a compound");
  mix_mass_properties(m, *this);  // every leaf must resolve
  std::string key = m.name;
  compounds_[key] = std::move(m);
}

const ElementProps& MaterialTable::element(std::string_view symbol) const {
  auto it = elements_.find(std::string(symbol));
  if (it == elements_.end())
    throw Error(ErrorCode::UnknownElement, "unknown element '" + std::string(symbol) + "'");
  return it->second;
}

bool MaterialTable::has_element(std::string_view symbol) const {
  return elements_.count(std::string(symbol)) > 0;
}

Material MaterialTable::resolve(std::string_view name) const {
  if (has_element(name)) return Material::element(std::string(name));
  auto it = compounds_.find(std::string(name));
  if (it != compounds_.end()) return it->second;
  throw Error(ErrorCode::UnknownElement, "unknown material '" + std::string(name) + "'");
}

double MaterialTable::density(const Material& m) const {
  if (m.is_element()) return element(std::get<std::string>(m.composition)).density;
  if (!m.density) throw Error(ErrorCode::InvalidMaterial, "compound " + m.name + " lacks a density");
  return *m.density;
}

const MaterialTable& MaterialTable::builtin() {
  static const MaterialTable table = [] {
    auto t = MaterialTable::parse_elements(kElementTable);
    t.parse_compounds(kCompoundTable);
    return t;
  }();
  return table;
}

MassLengths mix_mass_properties(const Material& m, const MaterialTable& table) {
  if (m.is_element()) {
    const auto& e = table.element(std::get<std::string>(m.composition));
    return {e.x0, e.lambda_t, e.lambda_i};
  }
  double inv_x0 = 0.0, inv_t = 0.0, inv_i = 0.0;
  for (const auto& c : std::get<std::vector<Component>>(m.composition)) {
    auto l = mix_mass_properties(c.material, table);
    inv_x0 += c.mass_fraction / l.x0;
    inv_t += c.mass_fraction / l.lambda_t;
    inv_i += c.mass_fraction / l.lambda_i;
  }
  return {1.0 / inv_x0, 1.0 / inv_t, 1.0 / inv_i};
}

double mass_length(const MassLengths& l, LengthKind kind) {
  switch (kind) {
    case LengthKind::Radiation: return l.x0;
    case LengthKind::Collision: return l.lambda_t;
    case LengthKind::Interaction: return l.lambda_i;
  }
  return l.x0;
}

namespace {
void check_thickness(const Layer& layer) {
  if (!(layer.thickness_cm >= 0.0) || !std::isfinite(layer.thickness_cm))
    throw Error(ErrorCode::InvalidMaterial,
                "layer of " + layer.material.name + " has a negative thickness");
}
}  // namespace

double occupancy(const LayerStack& stack, LengthKind kind, const MaterialTable& table) {
  double sum = 0.0;
  for (const auto& layer : stack.layers) {
    check_thickness(layer);
    double length = mass_length(mix_mass_properties(layer.material, table), kind);
    sum += layer.thickness_cm * table.density(layer.material) / length;
  }
  return 100.0 * sum;
}

double occupancy_via_cm(const LayerStack& stack, LengthKind kind, const MaterialTable& table) {
  double sum = 0.0;
  for (const auto& layer : stack.layers) {
    check_thickness(layer);
    double length_cm =
        mass_length(mix_mass_properties(layer.material, table), kind) / table.density(layer.material);
    sum += layer.thickness_cm / length_cm;
  }
  return 100.0 * sum;
}

OccupancyTriple occupancy_all(const LayerStack& stack, const MaterialTable& table) {
  return {occupancy(stack, LengthKind::Radiation, table),
          occupancy(stack, LengthKind::Collision, table),
          occupancy(stack, LengthKind::Interaction, table)};
}

std::string format_percent(double v) {
  if (!std::isfinite(v)) return v != v ? "nan" : (v > 0 ? "inf" : "-inf");
  bool negative = v < 0;
  char buf[512];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::abs(v), std::chars_format::fixed);
  std::string s(buf, ptr);
  auto dot = s.find('.');
  std::string int_part = dot == std::string::npos ? s : s.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  if (frac.size() > 3) {
    bool up = frac[3] >= '5';
    frac.resize(3);
    if (up) {
      std::string digits = int_part + frac;
      int i = static_cast<int>(digits.size()) - 1;
      while (i >= 0 && digits[i] == '9') digits[i--] = '0';
      if (i >= 0) ++digits[i];
      else digits.insert(digits.begin(), '1');
      int_part = digits.substr(0, digits.size() - 3);
      frac = digits.substr(digits.size() - 3);
    }
  }
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out = frac.empty() ? int_part : int_part + "." + frac;
  if (negative && out != "0") out.insert(out.begin(), '-');
  return out;
}

std::string occupancy_report(const OccupancyTriple& t) {
  return format_percent(t.radiation) + " / " + format_percent(t.collision) + " / " +
         format_percent(t.interaction);
}

OccupancyTriple facility_occupancy_serial(std::span<const LayerStack> stacks,
                                          const MaterialTable& table) {
  OccupancyTriple total;
  for (const auto& s : stacks) {
    auto o = occupancy_all(s, table);
    total.radiation += o.radiation;
    total.collision += o.collision;
    total.interaction += o.interaction;
  }
  return total;
}

OccupancyTriple facility_occupancy(std::span<const LayerStack> stacks, const MaterialTable& table) {
  // Per-stack results are summed in index order so the total matches the
  // serial reference bit for bit.
  std::vector<OccupancyTriple> parts(stacks.size());
  const auto n = static_cast<long>(stacks.size());
  std::vector<std::exception_ptr> errors(stacks.size());
#ifdef IEDM_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (n > 64)
#endif
  for (long i = 0; i < n; ++i) {
    try {
      parts[i] = occupancy_all(stacks[i], table);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  OccupancyTriple total;
  for (const auto& o : parts) {
    total.radiation += o.radiation;
    total.collision += o.collision;
    total.interaction += o.interaction;
  }
  return total;
}

LayerStack parse_layer_stack(std::string_view text, const MaterialTable& table, std::string dut) {
  LayerStack stack;
  stack.dut = std::move(dut);
  auto lines = lines_of(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    auto line = strip_comment(lines[n]);
    if (line.empty()) continue;
    auto f = split_fields(line, "\t, ", 2);
    if (f.size() != 2)
      throw Error(ErrorCode::InvalidMaterial,
                  "line " + std::to_string(n + 1) + ": expected 'material thickness_cm'");
    Layer layer{table.resolve(f[0]), parse_double(f[1], n + 1, "thickness")};
    check_thickness(layer);
    stack.layers.push_back(std::move(layer));
  }
  return stack;
}

}  // namespace iedm::materials

#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace iedm::materials {

/// Tabulated element properties. Lengths are mass-normalized (g/cm²).
struct ElementProps {
  std::string symbol;
  int z = 0;
  double a = 0.0;        // g/mol
  double density = 0.0;  // g/cm³
  double x0 = 0.0;       // radiation length
  double lambda_t = 0.0; // nuclear collision length
  double lambda_i = 0.0; // nuclear interaction length
  std::string source;
};

/// Three characteristic lengths in g/cm².
struct MassLengths {
  double x0 = 0.0;
  double lambda_t = 0.0;
  double lambda_i = 0.0;
};

struct Component;

/// Either a reference to a tabulated element or a compound of weighted
/// components with an explicit density.
struct Material {
  std::string name;
  std::variant<std::string, std::vector<Component>> composition;
  std::optional<double> density;  // required for compounds

  static Material element(std::string symbol);
  static Material compound(std::string name, double density,
                           std::vector<std::pair<Material, double>> parts);

  bool is_element() const { return std::holds_alternative<std::string>(composition); }
};

struct Component {
  Material material;
  double mass_fraction = 0.0;
};

enum class LengthKind { Radiation, Collision, Interaction };

struct Layer {
  Material material;
  double thickness_cm = 0.0;
};

/// Ordered along the beam axis; occupancy does not depend on the order.
struct LayerStack {
  std::string dut;
  std::vector<Layer> layers;
};

/// Radiation / nuclear collision / nuclear interaction occupancy in percent.
struct OccupancyTriple {
  double radiation = 0.0;
  double collision = 0.0;
  double interaction = 0.0;

  double get(LengthKind kind) const;
};

class MaterialTable {
 public:
  /// Element table plus named compounds shipped with the library.
  static const MaterialTable& builtin();

  /// Element rows: `symbol Z A density X0 lambdaT lambdaI [source...]`,
  /// separated by tabs, commas or spaces; `#` starts a comment.
  static MaterialTable parse_elements(std::string_view text);
  /// Compound rows: `name density component:fraction[,component:fraction...]`.
  void parse_compounds(std::string_view text);

  void add_element(ElementProps e);
  void add_compound(Material m);

  const ElementProps& element(std::string_view symbol) const;  // UnknownElement
  bool has_element(std::string_view symbol) const;
  const std::map<std::string, ElementProps>& elements() const noexcept { return elements_; }
  const std::map<std::string, Material>& compounds() const noexcept { return compounds_; }

  /// Element symbol or compound name -> Material. UnknownElement if neither.
  Material resolve(std::string_view name) const;

  double density(const Material& m) const;

 private:
  std::map<std::string, ElementProps> elements_;
  std::map<std::string, Material> compounds_;
};

/// Bragg additivity, applied independently to each length:
/// 1/L_mix = sum_j w_j / L_j.
MassLengths mix_mass_properties(const Material& m, const MaterialTable& table);

double mass_length(const MassLengths& l, LengthKind kind);

/// 100 * sum_i thickness_i * density_i / L_i for one length kind.
double occupancy(const LayerStack& stack, LengthKind kind, const MaterialTable& table);
OccupancyTriple occupancy_all(const LayerStack& stack, const MaterialTable& table);

/// Same sum computed through lengths in cm (L_gcm2 / density).
double occupancy_via_cm(const LayerStack& stack, LengthKind kind, const MaterialTable& table);

/// "R / C / I": each value rounded half-up to at most three decimals with
/// trailing zeros trimmed.
std::string occupancy_report(const OccupancyTriple& t);
std::string format_percent(double v);

/// Sum of occupancies over DUT stacks installed in the field at the same time.
/// Parallel over stacks when OpenMP is available.
OccupancyTriple facility_occupancy(std::span<const LayerStack> stacks, const MaterialTable& table);
OccupancyTriple facility_occupancy_serial(std::span<const LayerStack> stacks,
                                          const MaterialTable& table);

/// Layer stack file: one `material thickness_cm` row per layer (tab, comma or
/// space separated, `#` comments).
LayerStack parse_layer_stack(std::string_view text, const MaterialTable& table,
                             std::string dut = {});

}  // namespace iedm::materials

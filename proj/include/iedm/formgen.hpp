#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "iedm/dataset.hpp"
#include "iedm/ontology.hpp"
#include "iedm/validation.hpp"

namespace iedm::formgen {

enum class Widget { Text, NumberWithUnit, DateTime, Select, Reference, Subform };

std::string_view to_string(Widget w);

struct FieldSpec {
  Iri property;
  std::string label;
  Widget widget = Widget::Text;
  unsigned min_count = 0;
  std::optional<unsigned> max_count;
  // Select: the selectable leaf classes. NumberWithUnit: the concrete
  // quantity classes a value may be entered as.
  std::vector<Iri> options;
  // Filler class of the restriction this field was derived from.
  Iri target_class;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct FormSchema {
  Iri class_iri;
  std::string label;
  std::vector<FieldSpec> fields;

  friend bool operator==(const FormSchema&, const FormSchema&) = default;
};

/// Maximum number of leaf subclasses offered as a select before falling back
/// to a reference widget.
inline constexpr std::size_t kSelectThreshold = 8;

/// One field per effective restriction, in effective_restrictions order.
///
/// Widget rules, first match wins:
///  1. widget hint annotated on the filler class
///  2. filler below iedm:TimePosition -> datetime
///  3. filler below om:Quantity -> number-with-unit
///  4. filler with 1..8 leaf subclasses -> select over those leaves
///  5. filler whose fillers are all leaf widgets or restriction-free classes
///     (depth 1) -> subform
///  6. otherwise (no restrictions, or nested deeper) -> reference
FormSchema form_schema(const Iri& cls, const Ontology& onto);

/// Nesting depth used by rules 5/6: 0 for classes without restrictions, else
/// 1 + the deepest non-leaf-widget filler.
unsigned structural_depth(const Iri& cls, const Ontology& onto);

struct Submission {
  // Set when the submission is violation-free.
  std::optional<Individual> individual;
  // Every individual the submission minted, subject included.
  Dataset minted;
  std::vector<validation::Violation> violations;
};

/// Mints `subject` typed schema.class_iri plus whatever the field values
/// describe, then validates the subject and every minted child against
/// `ds` + minted. `ds` is only extended when there are no violations.
///
/// `values` is a JSON object keyed by property Iri; each entry is one value or
/// an array of values:
///   select     -> class Iri string (one of the options), or an existing
///                 individual typed below the field's target class
///   reference  -> individual Iri string
///   datetime   -> ISO-8601 string
///   number     -> number, or {"value", "kind"?, "relativeError"?, "unit"?}
///   text       -> string
///   subform    -> object of nested values, or an existing individual Iri
/// Shapes that contradict the widget throw Error(TypeMismatch).
Submission materialize_submission(const FormSchema& schema, const nlohmann::json& values,
                                  Dataset& ds, const Ontology& onto, const Iri& subject);

nlohmann::json to_json(const FieldSpec& f);
nlohmann::json to_json(const FormSchema& s);
FormSchema schema_from_json(const nlohmann::json& j);

}  // namespace iedm::formgen

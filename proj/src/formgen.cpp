#include "iedm/formgen.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "iedm/error.hpp"

namespace iedm::formgen {
namespace {

using nlohmann::json;

std::optional<Widget> widget_from_hint(std::string_view hint) {
  if (hint == "text") return Widget::Text;
  if (hint == "number-with-unit") return Widget::NumberWithUnit;
  if (hint == "datetime") return Widget::DateTime;
  if (hint == "select") return Widget::Select;
  if (hint == "reference") return Widget::Reference;
  if (hint == "subform") return Widget::Subform;
  return std::nullopt;
}

// Rules 1-4: widgets that need no nested form.
std::optional<Widget> leaf_widget(const Iri& filler, const Ontology& onto) {
  const auto& def = onto.get_class(filler);
  if (auto w = widget_from_hint(def.widget_hint)) return w;
  if (onto.is_subclass_of(filler, vocab::iedm("TimePosition"))) return Widget::DateTime;
  if (onto.is_subclass_of(filler, vocab::om("Quantity"))) return Widget::NumberWithUnit;
  auto leaves = onto.leaf_descendants(filler);
  if (!leaves.empty() && leaves.size() <= kSelectThreshold) return Widget::Select;
  return std::nullopt;
}

unsigned depth_of(const Iri& cls, const Ontology& onto, std::set<Iri>& visiting) {
  auto restrictions = onto.effective_restrictions(cls);
  if (restrictions.empty()) return 0;
  if (!visiting.insert(cls).second) return 2;  // recursive structure: never inline
  unsigned deepest = 0;
  for (const auto& r : restrictions) {
    if (leaf_widget(r.filler, onto)) continue;
    deepest = std::max(deepest, depth_of(r.filler, onto, visiting));
  }
  visiting.erase(cls);
  return 1 + deepest;
}

std::string local_of(const Iri& iri) { return iri.is_foreign() ? "x" : iri.local(); }

}  // namespace

std::string_view to_string(Widget w) {
  switch (w) {
    case Widget::Text: return "text";
    case Widget::NumberWithUnit: return "number-with-unit";
    case Widget::DateTime: return "datetime";
    case Widget::Select: return "select";
    case Widget::Reference: return "reference";
    case Widget::Subform: return "subform";
  }
  return "text";
}

unsigned structural_depth(const Iri& cls, const Ontology& onto) {
  std::set<Iri> visiting;
  return depth_of(onto.get_class(cls).iri, onto, visiting);
}

FormSchema form_schema(const Iri& cls, const Ontology& onto) {
  const auto& def = onto.get_class(cls);
  FormSchema schema;
  schema.class_iri = def.iri;
  schema.label = def.label;
  auto restrictions = onto.effective_restrictions(def.iri);
  std::map<Iri, int> per_property;
  for (const auto& r : restrictions) ++per_property[r.on_property];

  for (const auto& r : restrictions) {
    FieldSpec f;
    f.property = r.on_property;
    f.target_class = r.filler;
    const auto& filler = onto.get_class(r.filler);
    f.label = onto.get_property(r.on_property).label;
    if (per_property[r.on_property] > 1) f.label += " (" + filler.label + ")";
    f.min_count = r.cardinality;
    if (r.kind == RestrictionKind::Exactly) f.max_count = r.cardinality;

    if (auto w = leaf_widget(r.filler, onto)) {
      f.widget = *w;
    } else {
      f.widget = structural_depth(r.filler, onto) == 1 ? Widget::Subform : Widget::Reference;
    }
    if (f.widget == Widget::Select) {
      auto leaves = onto.leaf_descendants(r.filler);
      f.options.assign(leaves.begin(), leaves.end());
    } else if (f.widget == Widget::NumberWithUnit) {
      auto leaves = onto.leaf_descendants(r.filler);
      if (leaves.empty()) f.options = {r.filler};
      else f.options.assign(leaves.begin(), leaves.end());
    }
    schema.fields.push_back(std::move(f));
  }
  return schema;
}

namespace {

class Materializer {
 public:
  Materializer(Dataset& work, const Ontology& onto) : work_(work), onto_(onto) {}

  void run(const FormSchema& schema, const json& values, const Iri& subject) {
    if (!values.is_object() && !values.is_null())
      throw Error(ErrorCode::TypeMismatch, "submission values must be an object");
    if (work_.contains(subject))
      throw Error(ErrorCode::AlreadyExists, "individual " + subject.str() + " exists");
    work_.mint(onto_, schema.class_iri, subject);
    minted_.push_back(subject);
    if (values.is_null()) return;

    for (const auto& [key, raw] : values.items()) {
      Iri property;
      try {
        property = Iri::parse(key);
      } catch (const Error&) {
        throw Error(ErrorCode::TypeMismatch, "'" + key + "' is not a property Iri");
      }
      std::vector<const FieldSpec*> fields;
      for (const auto& f : schema.fields)
        if (f.property == property) fields.push_back(&f);
      if (fields.empty())
        throw Error(ErrorCode::TypeMismatch,
                    "no field for " + property.str() + " on " + schema.class_iri.str());
      const json items = raw.is_array() ? raw : json::array({raw});
      for (const auto& item : items) add_value(subject, *fields.front(), fields, item);
    }
  }

  const std::vector<Iri>& minted() const { return minted_; }

 private:
  Iri child_iri(const Iri& subject, const Iri& property) {
    for (int n = 1;; ++n) {
      Iri candidate = Iri::make(subject.is_foreign() ? "iedm" : subject.prefix(),
                                local_of(subject) + "_" + local_of(property) + "_" +
                                    std::to_string(n));
      if (!work_.contains(candidate)) return candidate;
    }
  }

  static std::string as_string(const json& v, const FieldSpec& f) {
    if (!v.is_string())
      throw Error(ErrorCode::TypeMismatch, f.property.str() + " (" +
                                               std::string(to_string(f.widget)) +
                                               ") expects a string, got " + v.dump());
    return v.get<std::string>();
  }

  static Iri as_iri(const json& v, const FieldSpec& f) {
    try {
      return Iri::parse(as_string(v, f));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::TypeMismatch) throw;
      throw Error(ErrorCode::TypeMismatch, f.property.str() + ": " + e.what());
    }
  }

  void link(const Iri& subject, const Iri& property, const Iri& target) {
    work_.assert_statement(subject, property, target, onto_);
  }

  void add_value(const Iri& subject, const FieldSpec& f, const std::vector<const FieldSpec*>& all,
                 const json& v) {
    switch (f.widget) {
      case Widget::Select: {
        Iri cls = as_iri(v, f);
        bool allowed = std::any_of(all.begin(), all.end(), [&](const FieldSpec* s) {
          return std::find(s->options.begin(), s->options.end(), cls) != s->options.end();
        });
        if (!allowed) {
          // An existing individual of one of the options is accepted as well.
          if (const auto* existing = work_.find(cls)) {
            bool typed = std::any_of(existing->types.begin(), existing->types.end(), [&](const Iri& t) {
              return onto_.has_class(t) && onto_.is_subclass_of(t, f.target_class);
            });
            if (typed) {
              link(subject, f.property, cls);
              return;
            }
          }
          throw Error(ErrorCode::TypeMismatch, cls.str() + " is not an option of " + f.property.str());
        }
        Iri child = child_iri(subject, f.property);
        work_.mint(onto_, cls, child);
        minted_.push_back(child);
        link(subject, f.property, child);
        return;
      }
      case Widget::Reference: {
        Iri target = as_iri(v, f);
        if (!work_.contains(target)) missing_.push_back({subject, f.property, target});
        link(subject, f.property, target);
        return;
      }
      case Widget::DateTime: {
        auto t = TimePosition::try_parse(as_string(v, f));
        if (!t) throw Error(ErrorCode::TypeMismatch, f.property.str() + " expects an ISO-8601 instant");
        const auto& ti = add_time_position(work_, onto_, *t);
        minted_.push_back(ti.iri);
        link(subject, f.property, ti.iri);
        return;
      }
      case Widget::NumberWithUnit: {
        Iri child = child_iri(subject, f.property);
        add_number(child, f, all, v);
        link(subject, f.property, child);
        return;
      }
      case Widget::Text: {
        std::string text = as_string(v, f);
        Iri child = child_iri(subject, f.property);
        work_.mint(onto_, f.target_class, child).values.insert(Literal::string(text));
        minted_.push_back(child);
        link(subject, f.property, child);
        return;
      }
      case Widget::Subform: {
        if (v.is_string()) {
          Iri target = as_iri(v, f);
          if (!work_.contains(target)) missing_.push_back({subject, f.property, target});
          link(subject, f.property, target);
          return;
        }
        if (!v.is_object())
          throw Error(ErrorCode::TypeMismatch, f.property.str() + " (subform) expects an object");
        Iri child = child_iri(subject, f.property);
        run(form_schema(f.target_class, onto_), v, child);
        link(subject, f.property, child);
        return;
      }
    }
  }

  void add_number(const Iri& child, const FieldSpec& f, const std::vector<const FieldSpec*>& all,
                  const json& v) {
    std::vector<Iri> options;
    for (const auto* s : all)
      for (const auto& o : s->options)
        if (std::find(options.begin(), options.end(), o) == options.end()) options.push_back(o);

    double value = 0.0;
    std::optional<Iri> kind_class;
    std::optional<double> rel_err;
    std::optional<Iri> unit;
    if (v.is_number()) {
      value = v.get<double>();
    } else if (v.is_object() && v.contains("value") && v["value"].is_number()) {
      value = v["value"].get<double>();
      if (v.contains("kind")) kind_class = as_iri(v["kind"], f);
      if (v.contains("relativeError")) {
        if (!v["relativeError"].is_number())
          throw Error(ErrorCode::TypeMismatch, "relativeError must be a number");
        rel_err = v["relativeError"].get<double>();
      }
      if (v.contains("unit")) unit = as_iri(v["unit"], f);
    } else {
      throw Error(ErrorCode::TypeMismatch,
                  f.property.str() + " (number-with-unit) expects a number or {value, kind}");
    }
    if (!kind_class) {
      if (options.size() != 1)
        throw Error(ErrorCode::TypeMismatch, f.property.str() + " needs an explicit kind");
      kind_class = options.front();
    }
    if (std::find(options.begin(), options.end(), *kind_class) == options.end())
      throw Error(ErrorCode::TypeMismatch, kind_class->str() + " is not a kind of " + f.property.str());

    Iri kind = *kind_class == vocab::iedm("AbsorbedDose") ? vocab::om("AbsorbedDose") : *kind_class;
    QuantityValue q;
    q.value = value;
    q.relative_error = rel_err;
    if (QuantityValue::is_supported_kind(kind)) {
      q.kind = kind;
      q.unit = unit ? *unit : QuantityValue::default_unit(kind);
      // Sign and error range are left to validation (ValueRange).
      add_quantity(work_, onto_, child, q);
    } else {
      if (!unit) throw Error(ErrorCode::TypeMismatch, kind_class->str() + " needs an explicit unit");
      auto& qi = work_.mint(onto_, *kind_class, child);
      qi.values.insert(Literal::number(value));
      work_.ensure(onto_, vocab::om("Unit"), *unit);
      link(child, vocab::iedm("hasUnit"), *unit);
    }
    minted_.push_back(child);
    for (const auto& t : work_.at(child).targets(vocab::iedm("hasUnit"))) minted_.push_back(t);
    for (const auto& t : work_.at(child).targets(vocab::iedm("hasMeasurementError")))
      minted_.push_back(t);
  }

 public:
  struct Missing {
    Iri subject;
    Iri property;
    Iri target;
  };
  std::vector<Missing> missing_;

 private:
  Dataset& work_;
  const Ontology& onto_;
  std::vector<Iri> minted_;
};

}  // namespace

Submission materialize_submission(const FormSchema& schema, const json& values, Dataset& ds,
                                  const Ontology& onto, const Iri& subject) {
  Dataset work = ds;
  Materializer m(work, onto);
  m.run(schema, values, subject);

  Submission out;
  std::set<Iri> minted(m.minted().begin(), m.minted().end());
  for (const auto& iri : minted) {
    const auto& ind = work.at(iri);
    out.minted.put(ind);
    auto r = validation::check_individual(ind, work, onto);
    out.violations.insert(out.violations.end(), r.violations.begin(), r.violations.end());
  }
  for (const auto& miss : m.missing_) {
    out.violations.push_back({miss.subject, validation::Rule::DanglingReference, miss.property,
                              "individual " + miss.target.str(), "missing",
                              miss.target.str() + " is referenced but not defined"});
  }
  std::sort(out.violations.begin(), out.violations.end());
  if (out.violations.empty()) {
    out.individual = work.at(subject);
    ds = std::move(work);
  }
  return out;
}

json to_json(const FieldSpec& f) {
  json j;
  j["propertyIri"] = f.property.str();
  j["label"] = f.label;
  j["widget"] = std::string(to_string(f.widget));
  j["minCount"] = f.min_count;
  j["maxCount"] = f.max_count ? json(*f.max_count) : json(nullptr);
  json options = json::array();
  for (const auto& o : f.options) options.push_back(o.str());
  j["options"] = options;
  j["targetClass"] = f.target_class.str();
  return j;
}

json to_json(const FormSchema& s) {
  json fields = json::array();
  for (const auto& f : s.fields) fields.push_back(to_json(f));
  return {{"classIri", s.class_iri.str()}, {"label", s.label}, {"fields", fields}};
}

FormSchema schema_from_json(const json& j) {
  FormSchema s;
  s.class_iri = Iri::parse(j.at("classIri").get<std::string>());
  s.label = j.value("label", "");
  for (const auto& jf : j.at("fields")) {
    FieldSpec f;
    f.property = Iri::parse(jf.at("propertyIri").get<std::string>());
    f.label = jf.value("label", "");
    auto w = widget_from_hint(jf.at("widget").get<std::string>());
    if (!w) throw Error(ErrorCode::TypeMismatch, "unknown widget " + jf.at("widget").dump());
    f.widget = *w;
    f.min_count = jf.at("minCount").get<unsigned>();
    if (!jf.at("maxCount").is_null()) f.max_count = jf.at("maxCount").get<unsigned>();
    for (const auto& o : jf.at("options")) f.options.push_back(Iri::parse(o.get<std::string>()));
    f.target_class = Iri::parse(jf.at("targetClass").get<std::string>());
    s.fields.push_back(std::move(f));
  }
  return s;
}

}  // namespace iedm::formgen

// Parallel kernels against their serial references.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>

#include "iedm/datamgr/service.hpp"
#include "iedm/materials.hpp"
#include "iedm/validation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace iedm;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double best_ms(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  }
  return best;
}

Dataset synthetic_dataset(int experiments) {
  std::map<std::string, datamgr::SampleRecord> samples;
  Dataset all;
  auto t0 = TimePosition::parse("2018-03-30T12:00:00Z");
  for (int i = 0; i < experiments; ++i) {
    datamgr::ExperimentRecord e;
    e.id = datamgr::format_id("EXP", i + 1);
    e.title = "Bench" + std::to_string(i);
    e.facility = vocab::iedm("CERN_IRRAD");
    e.irradiation_category = vocab::iedm("PassiveStandardIrradiation");
    e.admin = {"resp@example.org", "op@example.org", "", ""};
    for (int k = 0; k < 4; ++k) {
      datamgr::SampleRecord s;
      s.id = datamgr::format_id("SET", i * 4 + k + 1);
      s.name = "DUT" + std::to_string(i) + "_" + std::to_string(k);
      samples[s.id] = s;
      datamgr::DutIrradiationRecord r;
      r.id = datamgr::format_id("IRR", i * 4 + k + 1);
      r.dut_id = s.id;
      r.radiation_field = vocab::iedm("Protons_24GeV");
      r.start = TimePosition(t0.time() + std::chrono::hours(i + k));
      r.end = TimePosition(r.start.time() + std::chrono::hours(24 * 30));
      r.cumulated = QuantityValue::make(1e15 * (k + 1), vocab::iedm("Fluence"), 0.07);
      e.dut_irradiations.push_back(r);
    }
    auto ds = datamgr::experiment_dataset(e, samples);
    for (auto& [iri, ind] : ds.individuals()) {
      if (auto* existing = all.find(iri)) {
        existing->types.insert(ind.types.begin(), ind.types.end());
        existing->object_assertions.insert(ind.object_assertions.begin(), ind.object_assertions.end());
        existing->values.insert(ind.values.begin(), ind.values.end());
      } else {
        all.put(ind);
      }
    }
  }
  return all;
}

std::vector<materials::LayerStack> synthetic_stacks(int n, const materials::MaterialTable& table) {
  std::mt19937_64 rng(42);
  std::vector<std::string> names;
  for (const auto& [sym, e] : table.elements()) names.push_back(sym);
  for (const auto& [name, m] : table.compounds()) names.push_back(name);
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  std::uniform_real_distribution<double> thick(1e-4, 0.2);
  std::vector<materials::LayerStack> stacks(n);
  for (auto& s : stacks)
    for (int l = 0; l < 12; ++l) s.layers.push_back({table.resolve(names[pick(rng)]), thick(rng)});
  return stacks;
}

}  // namespace

int main(int argc, char** argv) {
  int experiments = argc > 1 ? std::atoi(argv[1]) : 500;
  int stacks_n = argc > 2 ? std::atoi(argv[2]) : 20000;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads: %d\n", threads);

  const auto& onto = Ontology::builtin();
  auto ds = synthetic_dataset(experiments);
  validation::Report par, ser;
  double t_ser = best_ms(3, [&] { ser = validation::validate_dataset_serial(ds, onto); });
  double t_par = best_ms(3, [&] { par = validation::validate_dataset(ds, onto); });
  std::printf("validate_dataset   %7zu individuals  serial %9.2f ms  parallel %9.2f ms  x%.2f  %s\n",
              ds.size(), t_ser, t_par, t_ser / t_par, par == ser ? "identical" : "MISMATCH");

  const auto& table = materials::MaterialTable::builtin();
  auto stacks = synthetic_stacks(stacks_n, table);
  materials::OccupancyTriple a, b;
  t_ser = best_ms(3, [&] { a = materials::facility_occupancy_serial(stacks, table); });
  t_par = best_ms(3, [&] { b = materials::facility_occupancy(stacks, table); });
  bool same = a.radiation == b.radiation && a.collision == b.collision && a.interaction == b.interaction;
  std::printf("facility_occupancy %7zu stacks       serial %9.2f ms  parallel %9.2f ms  x%.2f  %s\n",
              stacks.size(), t_ser, t_par, t_ser / t_par, same ? "identical" : "MISMATCH");
  return (par == ser && same) ? 0 : 1;
}

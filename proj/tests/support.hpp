#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "iedm/dataset.hpp"
#include "iedm/ontology.hpp"
#include "iedm/turtle.hpp"

namespace iedm::test {

std::string fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);

/// Golden FCC-Radmon instance parsed from the checked-in fixture.
rdf::ImportResult load_golden();

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// Minimal valid instance of `cls` at `subject`: every effective restriction
/// is met with freshly minted targets typed with the filler.
void build_witness(Dataset& ds, const Ontology& onto, const Iri& cls, const Iri& subject);

struct Seed {
  Iri declaring_class;
  Restriction restriction;
};

/// Every direct (non-inherited) restriction declared in the T-Box.
std::vector<Seed> all_restrictions(const Ontology& onto);

/// Witness for the seed's declaring class, mutated so the restriction is
/// broken by one: an extra satisfying target for exact restrictions, one
/// target short for min restrictions. `mutate = false` gives the witness.
Dataset seeded_dataset(const Ontology& onto, const Seed& seed, bool mutate, Iri& subject);

/// Small random dataset over the built-in vocabulary, including foreign
/// Iris and all literal datatypes.
Dataset random_dataset(std::mt19937_64& rng, const Ontology& onto);

}  // namespace iedm::test

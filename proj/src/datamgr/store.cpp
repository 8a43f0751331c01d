#include "iedm/datamgr/store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "iedm/error.hpp"

namespace iedm::datamgr {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot rename " + tmp.string() + ": " + ec.message());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

json load_json(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, path.string() + ": " + e.what());
  }
}

template <typename F>
void for_each_document(const fs::path& dir, F&& f) {
  if (!fs::exists(dir)) return;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    try {
      f(load_json(p));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Io) throw;
      throw Error(ErrorCode::Io, p.string() + ": " + e.what());
    }
  }
}

}  // namespace

Store::Store(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_ / "samples", ec);
  fs::create_directories(root_ / "experiments", ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create data root " + root_.string() + ": " + ec.message());

  for_each_document(root_ / "samples", [&](const json& j) {
    auto r = sample_from_json(j);
    samples_[r.id] = std::move(r);
  });
  for_each_document(root_ / "experiments", [&](const json& j) {
    auto r = experiment_from_json(j);
    experiments_[r.id] = std::move(r);
  });
  if (fs::exists(root_ / "counters.json")) {
    auto j = load_json(root_ / "counters.json");
    for (const auto& [k, v] : j.items()) counters_[k] = v.get<std::uint64_t>();
  }
  if (fs::exists(root_ / "facilities.json")) {
    auto j = load_json(root_ / "facilities.json");
    for (const auto& [k, v] : j.items()) facilities_[Iri::parse(k)] = facility_roles_from_json(v);
  }
}

const SampleRecord* Store::sample(const std::string& id) const {
  auto it = samples_.find(id);
  return it == samples_.end() ? nullptr : &it->second;
}

const ExperimentRecord* Store::experiment(const std::string& id) const {
  auto it = experiments_.find(id);
  return it == experiments_.end() ? nullptr : &it->second;
}

FacilityRoles Store::facility_roles(const Iri& facility) const {
  auto it = facilities_.find(facility);
  return it == facilities_.end() ? FacilityRoles{} : it->second;
}

std::uint64_t Store::next_counter(const std::string& name) {
  auto n = ++counters_[name];
  save_counters();
  return n;
}

void Store::raise_counter(const std::string& name, std::uint64_t value) {
  auto& c = counters_[name];
  if (c >= value) return;
  c = value;
  save_counters();
}

void Store::save_counters() const {
  json j = json::object();
  for (const auto& [k, v] : counters_) j[k] = v;
  write_file_atomic(root_ / "counters.json", j.dump(2) + "\n");
}

void Store::save_facilities() const {
  json j = json::object();
  for (const auto& [k, v] : facilities_) j[k.str()] = to_json(v);
  write_file_atomic(root_ / "facilities.json", j.dump(2) + "\n");
}

void Store::put_sample(const SampleRecord& r, const TimePosition& when, const std::string& user) {
  write_file_atomic(root_ / "samples" / (r.id + ".json"), to_json(r).dump(2) + "\n");
  samples_[r.id] = r;
  append_audit(when, user, r.id, r.version);
}

void Store::put_experiment(const ExperimentRecord& r, const TimePosition& when,
                           const std::string& user) {
  write_file_atomic(root_ / "experiments" / (r.id + ".json"), to_json(r).dump(2) + "\n");
  experiments_[r.id] = r;
  append_audit(when, user, r.id, r.version);
}

void Store::put_facility_roles(const Iri& facility, const FacilityRoles& roles) {
  facilities_[facility] = roles;
  save_facilities();
}

void Store::append_audit(const TimePosition& when, const std::string& user, const std::string& id,
                         std::uint64_t version) {
  std::ofstream out(root_ / "audit.log", std::ios::app | std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot append to audit.log");
  out << when.iso() << '\t' << user << '\t' << id << '\t' << version << '\n';
  out.flush();
}

std::vector<AuditEntry> Store::audit() const {
  std::vector<AuditEntry> out;
  if (!fs::exists(root_ / "audit.log")) return out;
  std::istringstream in(read_file(root_ / "audit.log"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t pos = 0;
    for (;;) {
      auto tab = line.find('\t', pos);
      f.push_back(line.substr(pos, tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (f.size() != 4) throw Error(ErrorCode::Io, "malformed audit line: " + line);
    out.push_back({TimePosition::parse(f[0]), f[1], f[2], std::stoull(f[3])});
  }
  return out;
}

}  // namespace iedm::datamgr

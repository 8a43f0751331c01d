#pragma once

#include <memory>
#include <string>

#include "iedm/datamgr/service.hpp"
#include "iedm/error.hpp"
#include "iedm/materials.hpp"

namespace iedm::datamgr {

/// JSON-over-HTTP front end for Service. The caller is identified by the
/// X-User header (an email address); there is no authentication.
///
///   GET   /samples?query=&experimentId=&page=&pageSize=
///   GET   /samples/{id}            POST /samples         PATCH /samples/{id}
///   GET   /experiments             GET  /experiments/{id} POST /experiments
///   PATCH /experiments/{id}/visibility
///   POST  /experiments/{id}/irradiations
///   POST  /experiments/{id}/irradiations/{rid}/complete
///   GET   /experiments/{id}/export.ttl   (draft report counts in headers)
///   GET   /experiments/{id}/export       ({"turtle", "report"})
///   POST  /validate?draft=             (Turtle body -> Report)
///   GET   /formschema/{classIri}       POST /formschema/{classIri}/submit
///   GET|POST /occupancy                (layer stack body -> occupancy)
///   GET   /health
///
/// Errors are {"error", "message"} documents: 400 malformed input,
/// 403 Forbidden, 404 unknown record or class, 409 VersionConflict and
/// AlreadyExists, 422 ValidationError and TemporalOrder.
class HttpApi {
 public:
  explicit HttpApi(Service& service,
                   const materials::MaterialTable& table = materials::MaterialTable::builtin());
  ~HttpApi();
  HttpApi(const HttpApi&) = delete;
  HttpApi& operator=(const HttpApi&) = delete;

  /// Binds `host:port`; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(); returns false on socket failure.
  bool serve();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// HTTP status for an error code.
int http_status(ErrorCode code);

}  // namespace iedm::datamgr

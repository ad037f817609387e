#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "symrec/session.hpp"

namespace httplib {
class Server;
}

namespace symrec {

// HTTP facade over the dataset and session stores.
//
//   POST   /v1/datasets                              CSV matrix or spec JSON
//   GET    /v1/datasets
//   GET    /v1/datasets/{id}
//   POST   /v1/sessions                              {"dataset_id": ...}
//   GET    /v1/sessions/{id}
//   POST   /v1/sessions/{id}/observations            {"symptom", "state", "replace"?, "strict"?}
//   DELETE /v1/sessions/{id}/observations/{symptom}
//   GET    /v1/sessions/{id}/recommendation          ETag / If-None-Match
//
// Every non-2xx response carries {"status", "code", "detail", "location"?}.
// There is no authentication; bind to loopback unless a proxy guards it.
class Service {
 public:
  explicit Service(std::uint64_t budget = kDefaultBudget);

  DatasetStore& datasets() noexcept { return datasets_; }
  SessionStore& sessions() noexcept { return sessions_; }

  // Registers the routes on `server`.
  void mount(httplib::Server& server);

  // Registers every *.csv (matrix) and *.json (specs) file in `dir`; the file
  // stem becomes the dataset id. Returns the ids in load order.
  std::vector<std::string> load_directory(const std::filesystem::path& dir);

 private:
  DatasetStore datasets_;
  SessionStore sessions_;
};

// Parses a dataset upload. JSON is recognised by content type or by a leading
// '{' / '['; anything else is read as matrix CSV.
Dataset dataset_from_upload(std::string id, const std::string& body, const std::string& content_type);

// Blocks serving on host:port. Returns non-zero when the socket cannot bind.
int serve(Service& service, const std::string& host, int port);

}  // namespace symrec

#include "symrec/service.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "httplib.h"
#include "symrec/errors.hpp"
#include "symrec/io.hpp"

namespace symrec {

namespace {

using io::Json;

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump() + "\n", "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& detail,
                const std::string& location = {}) {
  Json body;
  body["status"] = status;
  body["code"] = code;
  body["detail"] = detail;
  if (!location.empty()) body["location"] = location;
  send_json(res, status, body);
}

// Maps domain exceptions onto ApiError bodies.
template <class F>
void guarded(httplib::Response& res, F&& handler) {
  try {
    handler();
  } catch (const ParseError& e) {
    send_error(res, 400, e.code(), e.what(), "row " + std::to_string(e.row()) + ", col " + std::to_string(e.col()));
  } catch (const SchemaError& e) {
    send_error(res, 400, e.code(), e.reason(), e.path());
  } catch (const SpecValidation& e) {
    send_error(res, 400, e.code(), e.detail(), e.path());
  } catch (const EmptyCatalog& e) {
    send_error(res, 400, e.code(), e.what());
  } catch (const UnknownDataset& e) {
    send_error(res, 404, e.code(), e.what());
  } catch (const UnknownSession& e) {
    send_error(res, 404, e.code(), e.what());
  } catch (const ContradictoryObservation& e) {
    send_error(res, 409, e.code(), e.what(), e.symptom());
  } catch (const UnknownSymptom& e) {
    send_error(res, 422, e.code(), e.what());
  } catch (const Overbudget& e) {
    send_error(res, 422, e.code(), e.what(), e.disorder());
  } catch (const InvalidArgument& e) {
    send_error(res, 400, e.code(), e.what());
  } catch (const Error& e) {
    send_error(res, 422, e.code(), e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "Internal", e.what());
  }
}

Json parse_body(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("$", std::string("invalid JSON at byte ") + std::to_string(e.byte));
  }
}

Json dataset_summary(const Dataset& ds) {
  Json out;
  out["dataset_id"] = ds.id();
  out["disorders"] = ds.catalog().labels();
  out["symptoms"] = ds.space().symptoms();
  out["symptom_count"] = ds.space().size();
  out["source"] = ds.has_matrix() ? (ds.has_specs() ? "both" : "matrix") : "specs";
  if (ds.has_matrix()) out["profile_count"] = ds.matrix().rows();
  return out;
}

Json session_summary(const Session& s) {
  auto out = io::session_to_json(s);
  Json summary;
  summary["session_id"] = s.id;
  summary["dataset_id"] = s.dataset_id;
  summary["revision"] = s.revision;
  summary["observations"] = out["observations"];
  return summary;
}

std::string etag_for(const Session& s) {
  return "\"" + s.dataset_id + ":" + s.id + ":" + std::to_string(s.revision) + "\"";
}

bool looks_like_json(const std::string& body, const std::string& content_type) {
  if (content_type.find("json") != std::string::npos) return true;
  if (content_type.find("csv") != std::string::npos) return false;
  auto it = std::find_if(body.begin(), body.end(), [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
  return it != body.end() && (*it == '{' || *it == '[');
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Dataset dataset_from_upload(std::string id, const std::string& body, const std::string& content_type) {
  if (looks_like_json(body, content_type)) return Dataset::from_specs(std::move(id), io::parse_specs(body));
  return Dataset::from_matrix(std::move(id), io::parse_matrix(body).matrix);
}

Service::Service(std::uint64_t budget) : sessions_(datasets_, budget) {}

std::vector<std::string> Service::load_directory(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".csv" || ext == ".json")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::string> ids;
  for (const auto& f : files) {
    auto type = f.extension() == ".json" ? "application/json" : "text/csv";
    datasets_.add(dataset_from_upload(f.stem().string(), read_file(f), type));
    ids.push_back(f.stem().string());
  }
  return ids;
}

void Service::mount(httplib::Server& server) {
  server.Post("/v1/datasets", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      std::string id = req.has_param("id") ? req.get_param_value("id") : datasets_.next_id();
      auto ds = datasets_.add(dataset_from_upload(id, req.body, req.get_header_value("Content-Type")));
      send_json(res, 201, dataset_summary(*ds));
    });
  });

  server.Get("/v1/datasets", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      Json list = Json::array();
      for (const auto& ds : datasets_.list()) list.push_back(dataset_summary(*ds));
      send_json(res, 200, Json{{"datasets", list}});
    });
  });

  server.Get(R"(/v1/datasets/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, dataset_summary(*datasets_.get(req.matches[1]))); });
  });

  server.Post("/v1/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto body = parse_body(req);
      if (!body.is_object() || !body.contains("dataset_id") || !body["dataset_id"].is_string())
        throw SchemaError("$.dataset_id", "expected a string");
      send_json(res, 201, session_summary(sessions_.create(body["dataset_id"].get<std::string>())));
    });
  });

  server.Get(R"(/v1/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, session_summary(sessions_.get(req.matches[1]))); });
  });

  server.Post(R"(/v1/sessions/([^/]+)/observations)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto body = parse_body(req);
      if (!body.is_object()) throw SchemaError("$", "expected an object");
      if (!body.contains("symptom") || !body["symptom"].is_string())
        throw SchemaError("$.symptom", "expected a string");
      if (!body.contains("state") || !body["state"].is_string())
        throw SchemaError("$.state", "expected 'present' or 'absent'");
      auto state = parse_observation_state(body["state"].get<std::string>());
      if (!state) throw SchemaError("$.state", "expected 'present' or 'absent'");
      auto flag = [&](const char* key) {
        if (!body.contains(key)) return false;
        if (!body[key].is_boolean()) throw SchemaError(std::string("$.") + key, "expected a boolean");
        return body[key].get<bool>();
      };
      bool replace = flag("replace");
      bool strict = flag("strict");
      Observation obs{body["symptom"].get<std::string>(), *state};
      try {
        check_symptom_name(obs.symptom);
      } catch (const InvalidArgument& e) {
        throw SchemaError("$.symptom", e.what());
      }
      auto session = sessions_.observe(req.matches[1], obs, replace, strict);
      auto summary = session_summary(session);
      if (!datasets_.get(session.dataset_id)->space().contains(obs.symptom))
        summary["warnings"] = Json::array({"unknown symptom '" + obs.symptom + "'"});
      send_json(res, 200, summary);
    });
  });

  server.Delete(R"(/v1/sessions/([^/]+)/observations/([^/]+))",
                [this](const httplib::Request& req, httplib::Response& res) {
                  guarded(res, [&] {
                    send_json(res, 200, session_summary(sessions_.retract(req.matches[1], req.matches[2].str())));
                  });
                });

  server.Get(R"(/v1/sessions/([^/]+)/recommendation)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto current = sessions_.get(req.matches[1]);
      auto tag = etag_for(current);
      if (req.get_header_value("If-None-Match") == tag) {
        res.status = 304;
        res.set_header("ETag", tag);
        return;
      }
      auto snap = sessions_.recommend(req.matches[1]);
      auto body = io::recommendation_to_json(snap.recommendation);
      body["session_id"] = snap.session.id;
      body["dataset_id"] = snap.session.dataset_id;
      body["revision"] = snap.session.revision;
      res.set_header("ETag", etag_for(snap.session));
      send_json(res, 200, body);
    });
  });

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) send_error(res, res.status, res.status == 404 ? "NotFound" : "HttpError", "no such route");
  });
}

int serve(Service& service, const std::string& host, int port) {
  httplib::Server server;
  service.mount(server);
  std::cerr << "listening on http://" << host << ":" << port << " (no authentication)\n";
  return server.listen(host, port) ? 0 : 1;
}

}  // namespace symrec

#include "slitworks/app/service.hpp"

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <future>
#include <memory>

#include "slitworks/app/presets.hpp"
#include "slitworks/app/runner.hpp"
#include "slitworks/core/constants.hpp"
#include "slitworks/errors.hpp"
#include "slitworks/oracle/oracle.hpp"

namespace slitworks::app {

namespace {

struct HttpError {
  int status;
  Json body;
};

Json errorBody(const std::string& kind, const std::string& message) {
  return Json{{"error", {{"kind", kind}, {"message", message}}}};
}

// Maps an in-flight exception to a status and JSON error body.
HttpError classify(std::exception_ptr ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const Json::exception& e) {
    return {400, errorBody("malformed_json", e.what())};
  } catch (const ScenarioError& e) {
    Json b = errorBody("schema", e.message());
    b["error"]["path"] = e.path();
    if (e.line() > 0) b["error"]["line"] = e.line();
    return {400, b};
  } catch (const UsageError& e) {
    return {400, errorBody("usage", e.what())};
  } catch (const AliasingError& e) {
    Json b = errorBody("aliasing", e.what());
    b["error"]["required_samples"] = e.requiredSamples();
    return {422, b};
  } catch (const OpaqueAtAngleError& e) {
    return {422, errorBody("opaque_at_angle", e.what())};
  } catch (const DomainError& e) {
    return {422, errorBody("domain", e.what())};
  } catch (const FitError& e) {
    return {422, errorBody("fit", e.what())};
  } catch (const std::exception& e) {
    return {500, errorBody("internal", e.what())};
  }
  return {500, errorBody("internal", "unknown error")};
}

void sendJson(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

// Body is a scenario document, or {"preset": name, "overrides": {...}} merged onto a preset.
Scenario requestScenario(const httplib::Request& req, const Limits& limits) {
  const Json body = Json::parse(req.body);
  if (body.is_object() && body.contains("preset")) {
    if (!body["preset"].is_string()) throw ScenarioError("preset", "expected a preset name");
    Json doc = scenarioToJson(loadPreset(body["preset"].get<std::string>(), limits));
    if (body.contains("overrides")) doc.merge_patch(body["overrides"]);
    return scenarioFromJson(doc, limits);
  }
  return scenarioFromJson(body, limits);
}

bool flag(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return false;
  const auto v = req.get_param_value(name);
  return v.empty() || v == "1" || v == "true";
}

template <class Compute>
void computeEndpoint(const httplib::Request& req, httplib::Response& res, const ServiceConfig& cfg, Compute compute) {
  Scenario s;
  try {
    s = requestScenario(req, cfg.limits);
  } catch (...) {
    const auto e = classify(std::current_exception());
    return sendJson(res, e.status, e.body);
  }
  const bool arrays = flag(req, "arrays");

  if (!flag(req, "progress")) {
    try {
      RunControl ctl;
      ctl.threads = cfg.threads;
      sendJson(res, 200, compute(s, ctl, arrays));
    } catch (...) {
      const auto e = classify(std::current_exception());
      sendJson(res, e.status, e.body);
    }
    return;
  }

  // Chunked NDJSON: {"progress": f} lines, then {"result": ...} or {"error": ...}.
  struct Job {
    std::atomic<double> progress{0};
    std::future<Json> result;
    double sent = -1;
  };
  auto job = std::make_shared<Job>();
  job->result = std::async(std::launch::async, [job, s, arrays, compute, threads = cfg.threads] {
    RunControl ctl;
    ctl.threads = threads;
    ctl.progress = [job](double f) {
      double cur = job->progress.load();
      while (f > cur && !job->progress.compare_exchange_weak(cur, f)) {
      }
    };
    return compute(s, ctl, arrays);
  });
  res.set_chunked_content_provider("application/x-ndjson", [job](std::size_t, httplib::DataSink& sink) {
    while (job->result.wait_for(std::chrono::milliseconds(100)) != std::future_status::ready) {
      const double p = job->progress.load();
      if (p >= job->sent + 0.01) {
        job->sent = p;
        const std::string line = Json{{"progress", p}}.dump() + "\n";
        if (!sink.write(line.data(), line.size())) return false;
      }
    }
    std::string line;
    try {
      line = Json{{"result", job->result.get()}}.dump() + "\n";
    } catch (...) {
      auto e = classify(std::current_exception());
      e.body["status"] = e.status;
      line = e.body.dump() + "\n";
    }
    sink.write(line.data(), line.size());
    sink.done();
    return true;
  });
}

}  // namespace

void installRoutes(httplib::Server& svr, const ServiceConfig& cfg) {
  svr.set_payload_max_length(cfg.maxBodyBytes);
  svr.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  svr.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  svr.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    sendJson(res, 200, Json{{"status", "ok"}, {"version", SLITWORKS_VERSION}, {"constants", constants::version}});
  });

  svr.Get("/schema", [](const httplib::Request&, httplib::Response& res) { sendJson(res, 200, scenarioJsonSchema()); });

  svr.Get("/presets", [cfg](const httplib::Request&, httplib::Response& res) {
    Json list = Json::array();
    try {
      for (const auto& name : presetNames()) {
        const Scenario s = loadPreset(name, cfg.limits);
        list.push_back({{"name", name}, {"description", s.description}, {"scenario", scenarioToJson(s)}});
      }
      sendJson(res, 200, list);
    } catch (...) {
      const auto e = classify(std::current_exception());
      sendJson(res, e.status, e.body);
    }
  });

  svr.Get(R"(/presets/([A-Za-z0-9_.-]+))", [cfg](const httplib::Request& req, httplib::Response& res) {
    try {
      const std::string name = req.matches[1];
      const Scenario s = loadPreset(name, cfg.limits);
      sendJson(res, 200, {{"name", name}, {"yaml", presetYaml(name)}, {"scenario", scenarioToJson(s)}});
    } catch (const UsageError& e) {
      sendJson(res, 404, errorBody("not_found", e.what()));
    }
  });

  svr.Get("/problems", [](const httplib::Request& req, httplib::Response& res) {
    const std::string filter = req.has_param("filter") ? req.get_param_value("filter") : "*";
    res.set_content(oracle::reportJson(oracle::evaluateAll(filter)), "application/json");
  });

  svr.Post("/simulate", [cfg](const httplib::Request& req, httplib::Response& res) {
    computeEndpoint(req, res, cfg, [](const Scenario& s, const RunControl& ctl, bool arrays) {
      return simulationResponse(s, runSimulation(s, ctl), arrays);
    });
  });

  svr.Post("/carpet", [cfg](const httplib::Request& req, httplib::Response& res) {
    computeEndpoint(req, res, cfg, [](const Scenario& s, const RunControl& ctl, bool arrays) {
      return carpetResponse(s, runCarpet(s, ctl), arrays);
    });
  });

  if (!cfg.staticDir.empty() && !svr.set_mount_point("/", cfg.staticDir))
    throw UsageError("static directory '" + cfg.staticDir + "' does not exist");
}

int serve(const ServiceConfig& cfg) {
  httplib::Server svr;
  installRoutes(svr, cfg);
  std::fprintf(stderr, "slitworks %s listening on http://%s:%d\n", SLITWORKS_VERSION, cfg.host.c_str(), cfg.port);
  if (!svr.listen(cfg.host, cfg.port)) {
    std::fprintf(stderr, "cannot listen on %s:%d\n", cfg.host.c_str(), cfg.port);
    return 1;
  }
  return 0;
}

}  // namespace slitworks::app

// slitworks command line: simulate, carpet, oracle, serve and the small helpers around them.
#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "slitworks/app/manifest.hpp"
#include "slitworks/app/presets.hpp"
#include "slitworks/app/runner.hpp"
#include "slitworks/app/service.hpp"
#include "slitworks/core/constants.hpp"
#include "slitworks/core/units.hpp"
#include "slitworks/engine/envelope.hpp"
#include "slitworks/engine/parallel.hpp"
#include "slitworks/errors.hpp"
#include "slitworks/oracle/oracle.hpp"

namespace fs = std::filesystem;
using namespace slitworks;
using namespace slitworks::app;

namespace {

struct Common {
  std::string scenario;
  std::string preset;
  std::string outDir = ".";
  std::string format = "csv";
  long long seed = -1;
  unsigned threads = 0;
  bool quiet = false;
};

void addCommon(CLI::App* cmd, Common& c) {
  cmd->add_option("--scenario", c.scenario, "scenario file (YAML or .json)");
  cmd->add_option("--preset", c.preset, "shipped scenario name");
  cmd->add_option("--out-dir", c.outDir, "output directory")->capture_default_str();
  cmd->add_option("--format", c.format, "image format")->check(CLI::IsMember({"csv", "pgm", "png"}))->capture_default_str();
  cmd->add_option("--seed", c.seed, "override the scenario seed");
  cmd->add_option("--threads", c.threads, "worker threads (default: SLITWORKS_THREADS or hardware)");
  cmd->add_flag("--quiet", c.quiet, "no summary on stdout");
}

Scenario resolve(const Common& c) {
  if (c.scenario.empty() == c.preset.empty()) throw UsageError("give exactly one of --scenario and --preset");
  Scenario s = c.preset.empty() ? loadScenarioFile(c.scenario) : loadPreset(c.preset);
  if (c.seed >= 0) s.seed = static_cast<std::uint64_t>(c.seed);
  return s;
}

void writeOutputs(const Common& c, const std::string& command, const Scenario& s, const std::vector<OutputFile>& files) {
  fs::create_directories(c.outDir);
  for (const auto& f : files) writeFile((fs::path(c.outDir) / f.name).string(), f.bytes);
  const std::string manifest = s.name + "_" + command + "_manifest.json";
  writeFile((fs::path(c.outDir) / manifest).string(), runManifest(command, s, files).dump(2) + "\n");
  if (!c.quiet) {
    for (const auto& f : files) std::fprintf(stderr, "wrote %s\n", (fs::path(c.outDir) / f.name).string().c_str());
    std::fprintf(stderr, "wrote %s\n", (fs::path(c.outDir) / manifest).string().c_str());
  }
}

int run(int argc, char** argv) {
  CLI::App app{"slitworks: matter-wave diffraction at slits and gratings"};
  app.set_version_flag("--version", SLITWORKS_VERSION);
  app.require_subcommand(1);

  Common sim, car;
  auto* simulate = app.add_subcommand("simulate", "render a detector image, trace and arrivals");
  addCommon(simulate, sim);
  auto* carpet = app.add_subcommand("carpet", "compute a near-field (Talbot) carpet");
  addCommon(carpet, car);

  std::string filter = "*";
  bool json = false;
  auto* oracleCmd = app.add_subcommand("oracle", "re-derive the worked problems and compare with the printed answers");
  oracleCmd->add_option("--filter", filter, "glob on problem ids, e.g. 'P2.*'")->capture_default_str();
  oracleCmd->add_flag("--json", json, "machine-readable report");

  ServiceConfig svc;
  std::string staticDir;
  auto* serveCmd = app.add_subcommand("serve", "HTTP/JSON service");
  serveCmd->add_option("--host", svc.host)->capture_default_str();
  serveCmd->add_option("--port", svc.port)->capture_default_str();
  serveCmd->add_option("--threads", svc.threads, "engine threads per request");
  serveCmd->add_option("--static", svc.staticDir, "directory served at /");
  serveCmd->add_option("--max-body", svc.maxBodyBytes, "request size limit in bytes")->capture_default_str();
  serveCmd->add_option("--max-pixels", svc.limits.maxPixels, "detector size limit")->capture_default_str();
  serveCmd->add_option("--max-grid-exponent", svc.limits.maxGridExponent, "carpet grid limit")->capture_default_str();

  auto* presetsCmd = app.add_subcommand("presets", "list shipped scenarios");
  std::string presetName;
  auto* showCmd = app.add_subcommand("show-preset", "print a shipped scenario");
  showCmd->add_option("name", presetName)->required();
  bool normalized = false;
  showCmd->add_flag("--normalized", normalized, "print the SI-normalized form");

  Common val;
  auto* validateCmd = app.add_subcommand("validate", "check a scenario and print it normalized to SI");
  validateCmd->add_option("--scenario", val.scenario);
  validateCmd->add_option("--preset", val.preset);

  auto* schemaCmd = app.add_subcommand("schema", "print the scenario JSON schema");
  auto* constantsCmd = app.add_subcommand("constants", "print the physical constants table");

  Common cal;
  double target = 0;
  std::string c3Hi = "50 meV nm^3";
  auto* calibrateCmd = app.add_subcommand("calibrate", "find C3 that gives a target effective slit width");
  calibrateCmd->add_option("--scenario", cal.scenario);
  calibrateCmd->add_option("--preset", cal.preset);
  calibrateCmd->add_option("--target", target, "target s_eff in metres")->required();
  calibrateCmd->add_option("--c3-max", c3Hi, "upper end of the search")->capture_default_str();
  calibrateCmd->add_option("--threads", cal.threads);

  CLI11_PARSE(app, argc, argv);

  if (*simulate) {
    setDefaultThreadCount(sim.threads);
    const Scenario s = resolve(sim);
    RunControl ctl;
    ctl.threads = sim.threads;
    const auto r = runSimulation(s, ctl);
    writeOutputs(sim, "simulate", s, simulationOutputs(s, r, parseImageFormat(sim.format)));
    if (!sim.quiet) std::cout << r.summary.dump(2) << "\n";
    return 0;
  }
  if (*carpet) {
    setDefaultThreadCount(car.threads);
    const Scenario s = resolve(car);
    RunControl ctl;
    ctl.threads = car.threads;
    const auto r = runCarpet(s, ctl);
    writeOutputs(car, "carpet", s, carpetOutputs(s, r, parseImageFormat(car.format)));
    if (!car.quiet) std::cout << r.summary.dump(2) << "\n";
    return 0;
  }
  if (*oracleCmd) {
    const auto results = oracle::evaluateAll(filter);
    if (results.empty()) throw UsageError("no problem matches '" + filter + "'");
    std::cout << (json ? oracle::reportJson(results) + "\n" : oracle::reportTable(results));
    for (const auto& r : results)
      if (!r.pass) return 1;
    return 0;
  }
  if (*serveCmd) return serve(svc);
  if (*presetsCmd) {
    for (const auto& name : presetNames()) {
      const Scenario s = loadPreset(name);
      std::printf("%-20s %s\n", name.c_str(), s.description.c_str());
    }
    return 0;
  }
  if (*showCmd) {
    std::cout << (normalized ? scenarioToYaml(loadPreset(presetName)) : presetYaml(presetName));
    return 0;
  }
  if (*validateCmd) {
    std::cout << scenarioToYaml(resolve(val));
    return 0;
  }
  if (*schemaCmd) {
    std::cout << scenarioJsonSchema().dump(2) << "\n";
    return 0;
  }
  if (*constantsCmd) {
    std::cout << constants::tableText();
    return 0;
  }
  if (*calibrateCmd) {
    setDefaultThreadCount(cal.threads);
    const Scenario s = resolve(cal);
    if (!s.options.traceVMin) throw UsageError("calibration needs options.trace_v_min/trace_v_max as the speed band");
    EnvelopeConfig cfg;
    cfg.mask = s.mask;
    cfg.vdw = s.vdw;
    cfg.vdw.enabled = true;
    cfg.mass = s.molecule.mass;
    cfg.vMin = *s.options.traceVMin;
    cfg.vMax = *s.options.traceVMax;
    cfg.L2 = s.beamline.L2;
    cfg.peakThreshold = s.options.peakThreshold;
    const double c3 = calibrateC3(cfg, target, 0, units::parse(c3Hi, units::Dimension::C3));
    cfg.vdw.c3 = c3;
    const auto a = analyzeEnvelope(cfg);
    std::printf("C3 = %.6e J m^3 = %.4f meV nm^3\n", c3, c3 / units::factor(units::Dimension::C3, "meV nm^3"));
    std::printf("envelope FWHM %.4e m, s_eff %.4e m\n", a.fwhm, a.sEff);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ScenarioError& e) {
    std::fprintf(stderr, "scenario error: %s\n", e.what());
    return 2;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "physics domain error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}

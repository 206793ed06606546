#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "vqs/ansatz.hpp"
#include "vqs/circuit.hpp"
#include "vqs/compile.hpp"
#include "vqs/experiments.hpp"
#include "vqs/initstates.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNotConverged = 2;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << content;
}

vqs::RunConfig load_config(const std::string& config_path, const std::string& label,
                           std::uint64_t seed, bool seed_set) {
  vqs::RunConfig config;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot read config " + config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    config = vqs::parse_config(buffer.str());
  }
  if (!label.empty()) config.label = label;
  if (seed_set) config.seed = seed;
  if (config.label.empty())
    throw std::runtime_error("no experiment label given (--label or config)");
  return config;
}

vqs::EnvelopeParams parse_envelope(const std::string& text) {
  vqs::EnvelopeParams params;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("envelope expects key=value pairs: " + item);
    const std::string key = item.substr(0, eq);
    const double value = std::stod(item.substr(eq + 1));
    if (key == "eps")
      params.eps = value;
    else if (key == "tau")
      params.tau = value;
    else
      throw std::runtime_error("unknown envelope key: " + key);
  }
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-chain spectra by exact diagonalization and "
               "symmetry-preserving subspace-search VQE, with zero-noise "
               "extrapolation and circuit-to-pulse compilation"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();

  // spectrum
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Exact labeled spectrum");
  std::string model_name = "heisenberg";
  int n_qubits = 4;
  double J = 1.0, h = 1.0;
  spectrum_cmd->add_option("--model", model_name, "heisenberg | ising")
      ->capture_default_str();
  spectrum_cmd->add_option("--qubits", n_qubits, "Chain length")
      ->capture_default_str();
  spectrum_cmd->add_option("--J", J, "Coupling")->capture_default_str();
  spectrum_cmd->add_option("--field", h, "Transverse field (Ising only)")
      ->capture_default_str();

  // shared vqe/zne/compile options
  std::string config_path, label;
  std::uint64_t seed = 1;
  bool seed_set = false;

  auto add_run_options = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--label", label, "Experiment label, e.g. heis4/S1");
    cmd->add_option("--seed", seed, "Run seed")->each([&](const std::string&) {
      seed_set = true;
    });
  };

  auto* vqe_cmd = app.add_subcommand("vqe", "Train one experiment row");
  add_run_options(vqe_cmd);

  auto* zne_cmd = app.add_subcommand("zne", "Folded-noise series and extrapolation");
  add_run_options(zne_cmd);

  auto* compile_cmd = app.add_subcommand("compile", "Pulse schedule for a row");
  add_run_options(compile_cmd);
  std::string envelope_text;
  compile_cmd->add_option("--envelope", envelope_text,
                          "Waveform parameters, e.g. eps=2,tau=60");

  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path out(out_dir);
    const std::string timestamp = vqs::utc_timestamp();

    if (*spectrum_cmd) {
      vqs::Model model;
      if (model_name == "heisenberg" || model_name == "heis")
        model = vqs::Model::heisenberg;
      else if (model_name == "ising")
        model = vqs::Model::ising;
      else
        throw std::runtime_error("unknown model: " + model_name);
      const vqs::SpectrumRun run = vqs::run_spectrum(model, n_qubits, J, h);
      write_file(out / "spectrum.json", vqs::spectrum_json(run, timestamp));
      write_file(out / "spectrum.csv", vqs::spectrum_csv(run));
      std::cout << "wrote " << (out / "spectrum.json").string() << " and .csv ("
                << run.levels.size() << " levels)\n";
      return kOk;
    }

    if (*vqe_cmd) {
      const vqs::RunConfig config = load_config(config_path, label, seed, seed_set);
      const vqs::VqeRun run = vqs::run_vqe(config);
      write_file(out / "vqe_result.json", vqs::vqe_result_json(run, timestamp));
      write_file(out / "trace.jsonl", vqs::trace_to_jsonl(run.opt.trace));
      write_file(out / "trace.csv", vqs::trace_to_csv(run.opt.trace));
      std::cout << config.label << ": cost " << run.opt.best_cost << " after "
                << run.opt.total_evals << " evaluations\n";
      return run.opt.converged ? kOk : kNotConverged;
    }

    if (*zne_cmd) {
      const vqs::RunConfig config = load_config(config_path, label, seed, seed_set);
      const vqs::ZneRun run = vqs::run_zne(config);
      write_file(out / "zne_result.json", vqs::zne_result_json(run, timestamp));
      write_file(out / "zne_series.csv", vqs::zne_series_csv(run));
      std::cout << config.label << ": E(0) = " << run.fit.e0
                << (run.fit.linear_fallback ? " (linear fallback)" : "") << "\n";
      return run.fit.linear_fallback ? kNotConverged : kOk;
    }

    if (*compile_cmd) {
      const vqs::RunConfig config = load_config(config_path, label, seed, seed_set);
      const vqs::EnvelopeParams envelope =
          envelope_text.empty() ? vqs::EnvelopeParams{} : parse_envelope(envelope_text);
      const vqs::ExperimentRow& row = vqs::experiment(config.label);
      auto [ansatz, layout] = vqs::build_ansatz(row.ansatz);
      vqs::Circuit full = vqs::init_circuit(config.label);
      full.n_params = ansatz.n_params;
      full.append(ansatz);

      vqs::RVec theta;
      if (!config.theta.empty()) {
        if (static_cast<int>(config.theta.size()) != ansatz.n_params)
          throw std::runtime_error("theta size does not match the ansatz");
        theta = Eigen::Map<const vqs::RVec>(config.theta.data(),
                                            static_cast<long>(config.theta.size()));
      } else {
        vqs::Rng rng(config.seed);
        theta = vqs::init_parameters(ansatz.n_params, rng);
      }

      const vqs::CompileResult result = vqs::compile_to_pulses(full, theta);
      write_file(out / "schedule.json",
                 vqs::schedule_to_json(result.schedule, envelope));
      write_file(out / "schedule.csv", vqs::schedule_to_csv(result.schedule));
      write_file(out / "circuit.txt", vqs::to_text(full));
      std::cout << config.label << ": " << result.schedule.pulses.size()
                << " pulses, " << result.schedule.czs.size() << " CZs, "
                << result.schedule.total_ns << " ns\n";
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

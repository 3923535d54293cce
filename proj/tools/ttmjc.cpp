// ttmjc — command-line front end: model information, dynamical-map series
// generation, transfer-tensor extraction and propagation, figure data as
// CSV, and the library selftest.
//
// Exit codes: 0 success, 1 selftest failure, 2 invalid arguments or input,
// 3 I/O or numerical-consistency failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ttmjc/analysis.hpp"
#include "ttmjc/csv_io.hpp"
#include "ttmjc/jcmodel.hpp"
#include "ttmjc/selftest.hpp"
#include "ttmjc/ttm.hpp"

namespace {

using ttmjc::analysis::Channel;
using ttmjc::jcmodel::ModelParams;
using ttmjc::numlin::CMatrix;
using ttmjc::numlin::Complex;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Output is composed in memory first; a command that fails validation never
// creates its file, and a failed write does not leave a partial one behind.
void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) {
        out.close();
        std::remove(path.c_str());
        throw IoError("failed while writing '" + path + "'");
    }
}

ttmjc::io::Series read_series_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "' for reading");
    return ttmjc::io::read_series(in);
}

Channel parse_channel(const std::string& name) {
    if (name == "coherence") return Channel::Coherence;
    if (name == "population") return Channel::Population;
    throw std::invalid_argument("unknown channel '" + name + "'");
}

int parse_int(const std::string& field) {
    try {
        std::size_t used = 0;
        const int value = std::stoi(field, &used);
        if (used != field.size()) throw std::invalid_argument("");
        return value;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad integer '" + field + "'");
    }
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(parse_int(field));
    return out;
}

std::vector<double> parse_double_list(const std::string& text, char sep) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, sep)) {
        try {
            std::size_t used = 0;
            const double value = std::stod(field, &used);
            if (used != field.size()) throw std::invalid_argument("");
            out.push_back(value);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad number '" + field + "'");
        }
    }
    return out;
}

std::vector<ModelParams> parse_params_list(const std::string& text) {
    std::vector<ModelParams> out;
    std::stringstream ss(text);
    std::string pair;
    while (std::getline(ss, pair, ',')) {
        const std::vector<double> gk = parse_double_list(pair, ':');
        if (gk.size() != 2)
            throw std::invalid_argument("expected g:kappa pairs, got '" + pair + "'");
        out.push_back({gk[0], gk[1]});
        ttmjc::jcmodel::validate(out.back());
    }
    if (out.empty()) throw std::invalid_argument("empty g:kappa list");
    return out;
}

std::string fmt(double value) { return ttmjc::io::format_double(value); }

int run_info(const ModelParams& params) {
    ttmjc::jcmodel::validate(params);
    const auto reg = ttmjc::jcmodel::regime(params);
    const auto rates = ttmjc::jcmodel::eigenrates(params);
    std::cout << "regime       " << ttmjc::jcmodel::to_string(reg.damping) << "\n";
    std::cout << "r            " << fmt(reg.r) << "\n";
    std::cout << "kappa_plus   " << fmt(rates.kappa_plus.real()) << "  "
              << fmt(rates.kappa_plus.imag()) << "i\n";
    std::cout << "kappa_minus  " << fmt(rates.kappa_minus.real()) << "  "
              << fmt(rates.kappa_minus.imag()) << "i\n";
    if (reg.damping == ttmjc::jcmodel::Damping::Underdamped) {
        const auto table = ttmjc::analysis::markovian_steps(params, 3);
        for (std::size_t m = 0; m < table.zeros.size(); ++m)
            std::cout << "t_" << m + 1 << "          " << fmt(table.zeros[m]) << "\n";
    }
    return 0;
}

int run_maps(const ModelParams& params, double dt, int steps, const std::string& channel,
             const std::string& out_path) {
    ttmjc::jcmodel::validate(params);
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");

    ttmjc::io::Series series;
    series.dt = dt;
    if (channel == "atom") {
        series.dim = 4;
        for (int k = 1; k <= steps; ++k)
            series.items.push_back(ttmjc::jcmodel::reduced_atom_map(params, k * dt));
    } else {
        const Channel ch = parse_channel(channel);
        series.dim = 1;
        for (int k = 1; k <= steps; ++k) {
            CMatrix m(1);
            m(0, 0) = ch == Channel::Coherence ? ttmjc::jcmodel::Ec(params, k * dt)
                                               : ttmjc::jcmodel::Ep(params, k * dt);
            series.items.push_back(m);
        }
    }
    write_file(out_path, ttmjc::io::write_series(series));
    return 0;
}

int run_extract(const std::string& in_path, const std::string& out_path) {
    const ttmjc::ttm::MapSeries maps = ttmjc::io::as_maps(read_series_file(in_path));
    const ttmjc::ttm::TensorSeries tensors = ttmjc::ttm::extract(maps);
    write_file(out_path, ttmjc::io::write_series(ttmjc::io::as_series(tensors)));
    return 0;
}

int run_propagate(const std::string& in_path, const std::string& init_text, int steps,
                  const std::string& cutoff_text, const std::string& out_path) {
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    std::optional<int> cutoff = ttmjc::ttm::kUnlimitedMemory;
    if (cutoff_text != "unlimited") {
        cutoff = parse_int(cutoff_text);
        if (*cutoff < 1) throw std::invalid_argument("cutoff must be >= 1 or 'unlimited'");
    }

    const ttmjc::ttm::TensorSeries tensors =
        ttmjc::io::as_tensors(read_series_file(in_path));
    const std::vector<double> raw = parse_double_list(init_text, ',');
    std::vector<Complex> initial;
    if (raw.size() == static_cast<std::size_t>(tensors.dim)) {
        for (double v : raw) initial.emplace_back(v, 0.0);
    } else if (raw.size() == 2 * static_cast<std::size_t>(tensors.dim)) {
        for (std::size_t i = 0; i < raw.size(); i += 2) initial.emplace_back(raw[i], raw[i + 1]);
    } else {
        throw std::invalid_argument("--init must carry dim reals or dim re,im pairs");
    }

    const auto trajectory = ttmjc::ttm::propagate(tensors, initial, steps, cutoff);

    ttmjc::io::Table table;
    table.comments = {"trajectory from '" + in_path + "'", "cutoff = " + cutoff_text,
                      "dt = " + fmt(tensors.dt)};
    table.columns = {"t"};
    for (int i = 0; i < tensors.dim; ++i) {
        table.columns.push_back("x" + std::to_string(i) + "_re");
        table.columns.push_back("x" + std::to_string(i) + "_im");
    }
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        std::vector<double> row = {static_cast<double>(k) * tensors.dt};
        for (const Complex& z : trajectory[k]) {
            row.push_back(z.real());
            row.push_back(z.imag());
        }
        table.rows.push_back(std::move(row));
    }
    write_file(out_path, ttmjc::io::write_table(table));
    return 0;
}

int run_kernel_compare(const ModelParams& params, double t_max, int samples,
                       const std::string& k_text, const std::string& channel,
                       const std::string& out_path) {
    const std::vector<int> k_list = parse_int_list(k_text);
    const auto rows = ttmjc::analysis::kernel_difference_curve(params, t_max, samples, k_list,
                                                               parse_channel(channel));
    ttmjc::io::Table table;
    table.comments = {"g = " + fmt(params.g), "kappa = " + fmt(params.kappa),
                      "channel = " + channel};
    table.columns = {"t", "k", "diff"};
    for (const auto& r : rows)
        table.rows.push_back({r.t, static_cast<double>(r.k), r.diff});
    write_file(out_path, ttmjc::io::write_table(table));
    return 0;
}

int run_heatmap(double gt_max, double ratio_max, int nx, int ny, const std::string& out_path) {
    const auto grid = ttmjc::analysis::heatmap_T2c(gt_max, ratio_max, nx, ny);
    ttmjc::io::Table table;
    table.comments = {"signed T2c over gt in [0, " + fmt(gt_max) + "], ratio in [0, " +
                      fmt(ratio_max) + "]"};
    table.columns = {"ratio", "gt", "T2c"};
    for (std::size_t j = 0; j < grid.ratio_values.size(); ++j)
        for (std::size_t i = 0; i < grid.gt_values.size(); ++i)
            table.rows.push_back({grid.ratio_values[j], grid.gt_values[i], grid.values[j][i]});
    write_file(out_path, ttmjc::io::write_table(table));
    return 0;
}

int run_markovian_steps(const ModelParams& params, int n) {
    const auto table = ttmjc::analysis::markovian_steps(params, n);
    if (table.zeros.empty()) {
        std::cout << "no Markovian steps: regime "
                  << ttmjc::jcmodel::to_string(ttmjc::jcmodel::regime(params).damping) << "\n";
        return 0;
    }
    std::cout << "m  t_m\n";
    for (std::size_t m = 0; m < table.zeros.size(); ++m)
        std::cout << m + 1 << "  " << fmt(table.zeros[m]) << "\n";
    return 0;
}

int run_trajectory(const std::string& list_text, double t_max, int samples,
                   const std::string& channel, int mark_zeros, const std::string& out_path) {
    const std::vector<ModelParams> params_list = parse_params_list(list_text);
    const auto rows = ttmjc::analysis::regime_trajectories(params_list, t_max, samples,
                                                           parse_channel(channel), mark_zeros);
    ttmjc::io::Table table;
    table.comments = {"channel = " + channel, "zero_order 0 marks a regular sample"};
    table.columns = {"series", "g", "kappa", "t", "value", "zero_order"};
    for (const auto& r : rows)
        table.rows.push_back({static_cast<double>(r.series), r.g, r.kappa, r.t, r.value,
                              static_cast<double>(r.zero_order)});
    write_file(out_path, ttmjc::io::write_table(table));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transfer tensors, memory kernels and dynamical maps of a "
                 "two-level atom in a lossy cavity"};
    app.require_subcommand(1);

    double g = 1.0;
    double kappa = 0.0;
    double dt = 0.1;
    double t_max = 10.0;
    double gt_max = 12.0;
    double ratio_max = 1.5;
    int steps = 1;
    int samples = 100;
    int nx = 100;
    int ny = 100;
    int count = 3;
    int mark_zeros = 0;
    double perturb = 0.0;
    std::string channel = "coherence";
    std::string in_path;
    std::string out_path;
    std::string init_text;
    std::string cutoff_text = "unlimited";
    std::string k_text = "2,8,32,128";
    std::string list_text;

    CLI::App* info = app.add_subcommand("info", "regime, eigenrates and Markovian steps");
    info->add_option("--g", g, "atom-cavity coupling rate")->required();
    info->add_option("--kappa", kappa, "cavity loss rate")->required();

    CLI::App* maps = app.add_subcommand("maps", "write a dynamical-map series");
    maps->add_option("--g", g)->required();
    maps->add_option("--kappa", kappa)->required();
    maps->add_option("--dt", dt, "lattice spacing")->required();
    maps->add_option("--steps", steps, "number of maps")->required();
    maps->add_option("--channel", channel, "coherence | population | atom");
    maps->add_option("--out", out_path, "output CSV")->required();

    CLI::App* extract = app.add_subcommand("extract", "maps file -> transfer tensors file");
    extract->add_option("--in", in_path)->required();
    extract->add_option("--out", out_path)->required();

    CLI::App* propagate = app.add_subcommand("propagate", "convolutional propagation");
    propagate->add_option("--in", in_path, "transfer tensors CSV")->required();
    propagate->add_option("--init", init_text, "initial state components")->required();
    propagate->add_option("--steps", steps)->required();
    propagate->add_option("--cutoff", cutoff_text, "memory cutoff M or 'unlimited'");
    propagate->add_option("--out", out_path)->required();

    CLI::App* kernel = app.add_subcommand("kernel-compare",
                                          "|T_k(t/k) k^2/t^2 - K(t)| convergence data");
    kernel->add_option("--g", g)->required();
    kernel->add_option("--kappa", kappa)->required();
    kernel->add_option("--t-max", t_max)->required();
    kernel->add_option("--samples", samples)->required();
    kernel->add_option("--k", k_text, "comma-separated k values");
    kernel->add_option("--channel", channel, "coherence | population");
    kernel->add_option("--out", out_path)->required();

    CLI::App* heatmap = app.add_subcommand("heatmap", "signed T2c over (gt, kappa/4g)");
    heatmap->add_option("--gt-max", gt_max)->required();
    heatmap->add_option("--ratio-max", ratio_max)->required();
    heatmap->add_option("--nx", nx)->required();
    heatmap->add_option("--ny", ny)->required();
    heatmap->add_option("--out", out_path)->required();

    CLI::App* zeros = app.add_subcommand("markovian-steps", "zeros of T2c (Markovian lattices)");
    zeros->add_option("--g", g)->required();
    zeros->add_option("--kappa", kappa)->required();
    zeros->add_option("-n,--count", count, "number of steps");

    CLI::App* trajectory = app.add_subcommand("trajectory", "Ec/Ep trajectories per regime");
    trajectory->add_option("--g-kappa-list", list_text, "g:kappa[,g:kappa...]")->required();
    trajectory->add_option("--t-max", t_max)->required();
    trajectory->add_option("--samples", samples)->required();
    trajectory->add_option("--channel", channel, "coherence | population");
    trajectory->add_option("--mark-zeros", mark_zeros, "annotate first m Markovian steps");
    trajectory->add_option("--out", out_path)->required();

    CLI::App* selftest = app.add_subcommand("selftest", "run every module invariant suite");
    selftest->add_option("--perturb", perturb, "debug hook: offset Ec in the consistency suite")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*info) return run_info({g, kappa});
        if (*maps) return run_maps({g, kappa}, dt, steps, channel, out_path);
        if (*extract) return run_extract(in_path, out_path);
        if (*propagate) return run_propagate(in_path, init_text, steps, cutoff_text, out_path);
        if (*kernel) return run_kernel_compare({g, kappa}, t_max, samples, k_text, channel,
                                               out_path);
        if (*heatmap) return run_heatmap(gt_max, ratio_max, nx, ny, out_path);
        if (*zeros) return run_markovian_steps({g, kappa}, count);
        if (*trajectory)
            return run_trajectory(list_text, t_max, samples, channel, mark_zeros, out_path);
        if (*selftest) {
            ttmjc::selftest::Options options;
            options.perturb_ec = perturb;
            return ttmjc::selftest::run(std::cout, options) == 0 ? 0 : 1;
        }
    } catch (const ttmjc::io::CsvError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ttmjc::jcmodel::NumericalConsistencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

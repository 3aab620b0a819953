// qcorr — command-line surface for the correlation-measure library.
//
// Every run is seeded and reproducible: identical configurations produce
// byte-identical output, independent of the worker count.

#include "CLI11.hpp"
#include "json.hpp"

#include "qcorr/channels.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/oracle.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/spinchain.hpp"
#include "qcorr/states.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace {

constexpr const char* kVersion = "qcorr 1.0.0";

using ordered_json = nlohmann::ordered_json;
using namespace qcorr;

struct CommonOpts {
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "json";
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "RNG master seed");
    cmd->add_option("--out", opts.out, "output file (default: stdout)");
    cmd->add_option("--format", opts.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", opts.threads, "cap the worker count (0 = default)");
}

void apply_threads(const CommonOpts& opts) {
#ifdef _OPENMP
    if (opts.threads > 0) omp_set_num_threads(opts.threads);
#else
    (void)opts;
#endif
}

void write_text(const CommonOpts& opts, const std::string& text) {
    if (opts.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opts.out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + opts.out);
    f << text;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// "# qcorr 1.0.0 command=... seed=... key=value ..." metadata header
std::string csv_header(const std::string& command, const CommonOpts& opts,
                       const std::string& params) {
    std::ostringstream os;
    os << "# " << kVersion << " command=" << command << " seed=" << opts.seed;
    if (!params.empty()) os << ' ' << params;
    os << '\n';
    return os.str();
}

ordered_json json_meta(const std::string& command, const CommonOpts& opts,
                       const ordered_json& params) {
    ordered_json meta;
    meta["tool"] = kVersion;
    meta["command"] = command;
    meta["seed"] = opts.seed;
    meta["parameters"] = params;
    return meta;
}

int run_measures(const CommonOpts& opts, double c1, double c2, double c3) {
    const states::CorrelationVector c{c1, c2, c3};
    if (!states::is_physical(c)) {
        std::cerr << "error: correlation vector outside tetrahedron\n";
        return 2;
    }
    const auto ms = measures::measure_set(c);
    const auto h = measures::hierarchy_check(c);

    ordered_json j;
    j["meta"] = json_meta("measures", opts, {{"c", {c1, c2, c3}}});
    j["c"] = {c1, c2, c3};
    j["Q"] = ms.entropic_q;
    j["DG"] = ms.geometric_2norm;
    j["D1"] = ms.geometric_1norm;
    j["N"] = ms.negativity;
    j["hierarchy_ok"] = h.all_ok();
    write_text(opts, j.dump(2) + "\n");
    return 0;
}

int run_histogram(const CommonOpts& opts, int n_states, long nc, int bins) {
    const auto stats = oracle::delta_histogram(n_states, nc, bins, opts.seed);

    const ordered_json params = {{"n_states", n_states}, {"nc", nc}, {"bins", bins}};
    if (opts.format == "csv") {
        std::ostringstream os;
        os << csv_header("histogram", opts,
                         "n_states=" + std::to_string(n_states) + " nc=" + std::to_string(nc) +
                             " bins=" + std::to_string(bins) +
                             " mean_delta=" + fmt(stats.mean_delta) +
                             " fit_amplitude=" + fmt(stats.fit_amplitude) +
                             " fit_exponent=" + fmt(stats.fit_exponent));
        os << "bin_lo,bin_hi,count\n";
        for (std::size_t k = 0; k < stats.counts.size(); ++k)
            os << fmt(stats.bin_edges[k]) << ',' << fmt(stats.bin_edges[k + 1]) << ','
               << stats.counts[k] << '\n';
        write_text(opts, os.str());
    } else {
        ordered_json j;
        j["meta"] = json_meta("histogram", opts, params);
        j["mean_delta"] = stats.mean_delta;
        j["bin_edges"] = stats.bin_edges;
        j["counts"] = stats.counts;
        j["checkpoints"] = stats.checkpoints;
        j["checkpoint_means"] = stats.checkpoint_means;
        j["fit_amplitude"] = stats.fit_amplitude;
        j["fit_exponent"] = stats.fit_exponent;
        write_text(opts, j.dump(2) + "\n");
    }
    return 0;
}

int run_monotonicity_map(const CommonOpts& opts, int resolution, double step) {
    const auto map = measures::monotonicity_map(resolution, step);

    std::ostringstream os;
    os << csv_header("monotonicity-map", opts,
                     "resolution=" + std::to_string(resolution) + " step=" + fmt(step));
    os << "c1,c3,dQ_dc3,dDG_dc3,dD1_dc3,related_Q_DG,related_Q_D1\n";
    for (const auto& pt : map)
        os << fmt(pt.c1) << ',' << fmt(pt.c3) << ',' << fmt(pt.dq_dc3) << ','
           << fmt(pt.ddg_dc3) << ',' << fmt(pt.dd1_dc3) << ',' << (pt.related_q_dg ? 1 : 0)
           << ',' << (pt.related_q_d1 ? 1 : 0) << '\n';
    write_text(opts, os.str());
    return 0;
}

int run_xxz(const CommonOpts& opts, double dmin, double dmax, double step, int length) {
    const auto recs = spinchain::sweep(dmin, dmax, step, length);

    std::ostringstream os;
    os << csv_header("xxz", opts,
                     "delta_min=" + fmt(dmin) + " delta_max=" + fmt(dmax) +
                         " step=" + fmt(step) + " L=" + std::to_string(length));
    os << "delta,L,energy_density,dE_dDelta,Gxx,Gyy,Gzz,c1,c3,Q,DG,D1,N,hf_res1,hf_res2\n";
    for (const auto& r : recs)
        os << fmt(r.delta) << ',' << r.length << ',' << fmt(r.energy_density) << ','
           << fmt(r.de_ddelta) << ',' << fmt(r.gxx) << ',' << fmt(r.gyy) << ','
           << fmt(r.gzz) << ',' << fmt(r.c.c1) << ',' << fmt(r.c.c3) << ','
           << fmt(r.measures.entropic_q) << ',' << fmt(r.measures.geometric_2norm) << ','
           << fmt(r.measures.geometric_1norm) << ',' << fmt(r.measures.negativity) << ','
           << fmt(r.hf_res1) << ',' << fmt(r.hf_res2) << '\n';
    write_text(opts, os.str());
    return 0;
}

int run_channels(const CommonOpts& opts, int n_samples) {
    RngStream rng(opts.seed);

    ordered_json j;
    j["meta"] = json_meta("channels", opts, {{"n_samples", n_samples}});

    const auto w = channels::dg_noncontractivity_witness();
    j["witness"] = {{"purity_factor", w.purity_factor},
                    {"dg_base", w.dg_base},
                    {"dg_extended", w.dg_extended},
                    {"d1_base", w.d1_base},
                    {"d1_extended", w.d1_extended},
                    {"dg_increases_on_removal", w.dg_increases_on_removal},
                    {"d1_invariant", w.d1_invariant}};

    ordered_json scaling = ordered_json::array();
    ordered_json contractivity = ordered_json::array();
    for (int i = 0; i < n_samples; ++i) {
        const auto c = states::sample_bd_uniform(rng);
        const auto r = rng.ball_point();
        const channels::AncillaState sigma{{r[0], r[1], r[2]}};
        for (int p : {1, 2, 3}) {
            const auto rec = channels::dp_scaling_check(c, sigma, p, 200, opts.seed + i);
            scaling.push_back({{"c", {c.c1, c.c2, c.c3}},
                               {"p", p},
                               {"sigma_norm_p_pow", rec.sigma_norm_p_pow},
                               {"dp_value", rec.dp_value},
                               {"norm_identity_gap", rec.norm_identity_gap},
                               {"extended_candidate", rec.extended_candidate},
                               {"predicted_scaled", rec.predicted_scaled},
                               {"sampled_floor", rec.sampled_floor},
                               {"norm_identity_ok", rec.norm_identity_ok},
                               {"bound_ok", rec.bound_ok},
                               {"floor_ok", rec.floor_ok}});
        }

        double q[4];
        double s = 0.0;
        for (double& qi : q) {
            qi = -std::log(1.0 - rng.uniform());
            s += qi;
        }
        const channels::PauliChannel ch{q[0] / s, q[1] / s, q[2] / s, q[3] / s};
        const auto cr = channels::contractivity_check(c, ch);
        contractivity.push_back({{"c", {c.c1, c.c2, c.c3}},
                                 {"channel", {ch.q0, ch.qx, ch.qy, ch.qz}},
                                 {"d1_before", cr.d1_before},
                                 {"d1_after", cr.d1_after},
                                 {"dist_before", cr.dist_before},
                                 {"dist_after", cr.dist_after},
                                 {"d1_ok", cr.d1_ok},
                                 {"contraction_ok", cr.contraction_ok}});
    }
    j["scaling"] = scaling;
    j["contractivity"] = contractivity;
    write_text(opts, j.dump(2) + "\n");
    return 0;
}

int run_noq_min(const CommonOpts& opts, double c1, double c2, double c3, int resolution) {
    const states::CorrelationVector c{c1, c2, c3};
    if (!states::is_physical(c)) {
        std::cerr << "error: correlation vector outside tetrahedron\n";
        return 2;
    }
    const auto m = measures::noq_minimize(c, resolution);

    ordered_json j;
    j["meta"] = json_meta("noq-min", opts, {{"c", {c1, c2, c3}}, {"resolution", resolution}});
    j["value"] = m.value;
    j["argmin_u"] = m.argmin.u;
    j["c_zero"] = states::correlation_stats(c).c_zero;
    write_text(opts, j.dump(2) + "\n");
    return 0;
}

int run_oracle_d1(const CommonOpts& opts, double c1, double c2, double c3, long nc) {
    const states::CorrelationVector c{c1, c2, c3};
    if (!states::is_physical(c)) {
        std::cerr << "error: correlation vector outside tetrahedron\n";
        return 2;
    }
    const double c0 = states::correlation_stats(c).c_zero;

    std::vector<long> checkpoints;
    for (long k = 10; k < nc; k *= 10) checkpoints.push_back(k);
    checkpoints.push_back(nc);

    RngStream rng(opts.seed);
    const auto mins =
        oracle::d1_sample_min_checkpoints(states::bd_density_matrix(c), checkpoints, rng);

    ordered_json j;
    j["meta"] = json_meta("oracle-d1", opts, {{"c", {c1, c2, c3}}, {"nc", nc}});
    j["c_zero"] = c0;
    j["checkpoints"] = checkpoints;
    j["sampled_minima"] = mins;
    j["delta"] = mins.back() - c0;
    write_text(opts, j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropic and geometric correlation measures for two-qubit "
                 "Bell-diagonal states"};
    app.require_subcommand(1);

    CommonOpts opts;
    double c1 = 0, c2 = 0, c3 = 0;

    auto* measures_cmd = app.add_subcommand("measures", "closed-form measures of one state");
    measures_cmd->add_option("c1", c1)->required();
    measures_cmd->add_option("c2", c2)->required();
    measures_cmd->add_option("c3", c3)->required();
    add_common(measures_cmd, opts);

    int n_states = 1000, bins = 40;
    long nc = 10000;
    auto* hist_cmd = app.add_subcommand("histogram", "delta-statistic histogram and fit");
    hist_cmd->add_option("--n-states", n_states, "number of sampled Bell-diagonal states");
    hist_cmd->add_option("--nc", nc, "classical samples per state");
    hist_cmd->add_option("--bins", bins, "histogram bins");
    add_common(hist_cmd, opts);

    int resolution = 100;
    double step = 1e-4;
    auto* map_cmd =
        app.add_subcommand("monotonicity-map", "derivative map over the U(1) triangle");
    map_cmd->add_option("--resolution", resolution, "grid resolution");
    map_cmd->add_option("--step", step, "central-difference step");
    add_common(map_cmd, opts);

    double dmin = -2.5, dmax = 2.5, dstep = 0.1;
    int length = 8;
    auto* xxz_cmd = app.add_subcommand("xxz", "XXZ chain anisotropy sweep");
    xxz_cmd->add_option("--delta-min", dmin);
    xxz_cmd->add_option("--delta-max", dmax);
    xxz_cmd->add_option("--step", dstep);
    xxz_cmd->add_option("--length", length, "chain length (even, 4..16)");
    add_common(xxz_cmd, opts);

    int n_samples = 20;
    auto* chan_cmd = app.add_subcommand("channels", "scaling and contractivity reports");
    chan_cmd->add_option("--samples", n_samples, "sampled (state, ancilla, channel) triples");
    add_common(chan_cmd, opts);

    int noq_res = 100;
    auto* noq_cmd = app.add_subcommand("noq-min", "simplex minimization of 2(g- + g+)");
    noq_cmd->add_option("c1", c1)->required();
    noq_cmd->add_option("c2", c2)->required();
    noq_cmd->add_option("c3", c3)->required();
    noq_cmd->add_option("--resolution", noq_res, "barycentric lattice resolution");
    add_common(noq_cmd, opts);

    long oracle_nc = 100000;
    auto* oracle_cmd =
        app.add_subcommand("oracle-d1", "sampled trace-norm minimum for one state");
    oracle_cmd->add_option("c1", c1)->required();
    oracle_cmd->add_option("c2", c2)->required();
    oracle_cmd->add_option("c3", c3)->required();
    oracle_cmd->add_option("--nc", oracle_nc, "classical samples");
    add_common(oracle_cmd, opts);

    CLI11_PARSE(app, argc, argv);
    apply_threads(opts);

    try {
        if (measures_cmd->parsed()) return run_measures(opts, c1, c2, c3);
        if (hist_cmd->parsed()) return run_histogram(opts, n_states, nc, bins);
        if (map_cmd->parsed()) return run_monotonicity_map(opts, resolution, step);
        if (xxz_cmd->parsed()) return run_xxz(opts, dmin, dmax, dstep, length);
        if (chan_cmd->parsed()) return run_channels(opts, n_samples);
        if (noq_cmd->parsed()) return run_noq_min(opts, c1, c2, c3, noq_res);
        if (oracle_cmd->parsed()) return run_oracle_d1(opts, c1, c2, c3, oracle_nc);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

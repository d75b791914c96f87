#include "binec/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "binec/bounds.hpp"
#include "binec/errors.hpp"
#include "binec/metric.hpp"
#include "binec/random.hpp"

namespace binec::cli {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        if (!value.empty() && value[0] == '-') throw std::invalid_argument("negative");
        v = std::stoull(value, &used, 0);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad value for " + key + ": '" + value + "'");
    }
    if (used != value.size()) throw std::invalid_argument("bad value for " + key + ": '" + value + "'");
    return v;
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& value) {
    std::vector<T> out;
    for (const auto& part : split(value, ',')) out.push_back(static_cast<T>(parse_u64(key, part)));
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string join(const std::vector<std::size_t>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s;
}

NoiseKind parse_noise(const std::string& text) {
    if (text == "uniform") return NoiseKind::uniform;
    if (text == "concentrated") return NoiseKind::concentrated;
    if (text == "exhaustive") return NoiseKind::exhaustive;
    throw std::invalid_argument("unknown noise kind '" + text + "'");
}

// Options shared by build, simulate and mds-check: every config key is also a flag.
struct ExperimentFlags {
    std::string config_path;
    ConfigMap overrides;

    void attach(CLI::App& app) {
        app.add_option("--config", config_path, "key=value experiment file");
        const std::pair<const char*, const char*> keys[] = {
            {"network", "network file or 'synthetic'"},
            {"C", "mincut capacity (synthetic)"},
            {"E", "number of edges (synthetic)"},
            {"m", "field extension degree"},
            {"n", "packet length in symbols"},
            {"p", "noise fraction, e.g. 1/18"},
            {"seed", "master seed"},
            {"mode", "coherent | noncoherent"},
            {"noise", "uniform | concentrated | exhaustive"},
            {"targets", "edge list for concentrated noise"},
            {"trials", "random trials"},
            {"family", "family file for non-coherent mode"},
            {"retries", "MDS resampling limit"},
            {"extra_budget", "flips beyond floor(pEmn)"},
        };
        for (const auto& [key, help] : keys) {
            std::string flag = std::string("--") + key;
            if (flag == "--extra_budget") flag = "--extra-budget";
            const std::string k = key;
            app.add_option_function<std::string>(flag, [this, k](const std::string& v) { overrides[k] = v; }, help);
        }
    }

    ExperimentConfig resolve() const {
        ConfigMap values;
        if (!config_path.empty()) values = load_config_file(config_path);
        for (const auto& [k, v] : overrides) values[k] = v;
        return to_experiment(values);
    }
};

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<TransferPair> load_or_enumerate_family(const ExperimentConfig& cfg, const Setup& setup) {
    if (!cfg.family_file.empty()) {
        std::ifstream in(cfg.family_file);
        if (!in) throw std::runtime_error("cannot open " + cfg.family_file);
        return read_family(in, setup.params);
    }
    return enumerate_mds_family(setup.field, setup.params.capacity, setup.params.edges,
                                setup.transfer.source_edges);
}

// ---------------------------------------------------------------------------

int cmd_verify_field(unsigned m, std::uint64_t samples, std::ostream& out) {
    if (m < 1 || m > Field::kMaxBits) throw std::invalid_argument("m must be in 1..16");
    const Field field(m);
    const std::uint64_t used = m <= 4 ? 0 : samples;
    const FieldAudit audit = audit_field(field, used, 1);
    char modulus[16];
    std::snprintf(modulus, sizeof modulus, "0x%X", field.modulus());
    out << "m " << m << "\nmodulus " << modulus << "\nmode " << (audit.exhaustive ? "exhaustive" : "sampled")
        << "\nchecks " << audit.checks << "\nviolations " << audit.violations << '\n';
    out << (audit.violations == 0 ? "PASS" : "FAIL") << '\n';
    return audit.violations == 0 ? kOk : kFailure;
}

int cmd_bounds(const std::string& p, std::size_t c, std::size_t e, unsigned m, std::optional<std::size_t> n,
               std::ostream& out) {
    const RateReport r = rate_report(Rational::parse(p), c, e, m, n);
    out << kRateCsvHeader << '\n';
    write_csv_row(out, r);
    return kOk;
}

int cmd_sweep(const SweepRanges& ranges, const std::string& csv_path, std::ostream& out) {
    const auto rows = sweep(ranges);
    if (csv_path.empty()) {
        write_csv(out, rows);
    } else {
        std::ostringstream buf;
        write_csv(buf, rows);
        write_text_file(csv_path, buf.str());
        out << "rows " << rows.size() << '\n';
    }
    return kOk;
}

int cmd_build(const ExperimentConfig& cfg, const std::string& codebook_path, std::ostream& out, std::ostream& err) {
    const Setup setup = make_setup(cfg);
    const ChannelParams& params = setup.params;
    Codebook cb = cfg.mode == CodingMode::coherent
                      ? gv_construct_coherent(setup.transfer, setup.field, params, cfg.seed)
                      : gv_construct_noncoherent(load_or_enumerate_family(cfg, setup), setup.field, params, cfg.seed);

    if (!codebook_path.empty()) {
        std::ostringstream buf;
        write_codebook(buf, cb);
        write_text_file(codebook_path, buf.str());
    }

    const std::size_t bits = params.packet_rows() * params.n;
    const Distance dmin = min_distance(cb, cb.family, setup.field);
    const double gv = gv_rate(params.p, params.edges, params.capacity, params.n, params.m,
                              cfg.mode == CodingMode::noncoherent);
    const BigInt space = BigInt{1} << bits;

    out << "mode " << to_string(cb.mode) << '\n'
        << "C " << params.capacity << "\nE " << params.edges << "\nm " << params.m << "\nn " << params.n << '\n'
        << "p " << params.p.str() << '\n'
        << "attempts " << setup.attempts << '\n'
        << "family " << cb.family.size() << '\n'
        << "budget " << params.budget() << "\nradius " << cb.radius << '\n'
        << "size " << cb.size() << "\nrate " << fmt(cb.rate()) << '\n'
        << "min_distance " << (dmin == kInfiniteDistance ? std::string("inf") : std::to_string(dmin)) << '\n'
        << "gv_rate_finite " << fmt(gv) << '\n';

    bool ok = cb.size() < 2 || dmin > cb.radius;

    if (cfg.mode == CodingMode::coherent && cb.radius <= bits) {
        const BigInt ball = sphere_count_upper(params.edges, params.m, params.n, params.p);
        const BigInt guaranteed = (space + ball - 1) / ball;
        out << "gv_size_guarantee " << guaranteed << '\n';
        if (BigInt{cb.size()} < guaranteed) ok = false;
    }
    if (hamming_regime(params.p, params.capacity, params.edges, params.m)) {
        const BigInt bound = hamming_codebook_size_bound(params.capacity, params.edges, params.m, params.n, params.p);
        out << "hamming_size_bound " << bound << '\n';
        if (BigInt{cb.size()} > bound) ok = false;
    } else {
        out << "hamming_size_bound NA\n";
    }
    out << "invariants " << (ok ? "ok" : "violated") << '\n';
    if (!ok) err << "error: constructed codebook violates its guarantees\n";
    return ok ? kOk : kFailure;
}

int cmd_simulate(const ExperimentConfig& cfg, const std::string& codebook_path, const std::string& csv_path,
                 std::ostream& out, std::ostream& err) {
    if (codebook_path.empty()) throw std::invalid_argument("simulate needs --codebook");
    std::ifstream in(codebook_path);
    if (!in) throw std::runtime_error("cannot open " + codebook_path);
    const Codebook cb = read_codebook(in);

    const Setup setup = make_setup(cfg);
    if (!(cb.params == setup.params)) throw std::invalid_argument("codebook parameters do not match the config");
    if (cb.mode != cfg.mode) throw std::invalid_argument("codebook mode does not match the config");

    const std::uint64_t weight = setup.params.budget() + cfg.extra_budget;
    const Decoder decoder = make_decoder(cb, setup.transfer, setup.field);
    std::ostringstream csv;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;

    out << "mode " << to_string(cb.mode) << "\nnoise "
        << (cfg.noise == NoiseKind::uniform ? "uniform" : cfg.noise == NoiseKind::concentrated ? "concentrated"
                                                                                             : "exhaustive")
        << "\nweight " << weight << '\n';

    if (cfg.noise == NoiseKind::exhaustive) {
        const ChannelTables channel = make_channel_tables(cb, setup.transfer, setup.field);
        std::vector<std::size_t> messages(cb.size());
        for (std::size_t i = 0; i < messages.size(); ++i) messages[i] = i;
        const FailureScan scan = parallel::scan_failures(channel, decoder.tables(), weight, messages);
        trials = scan.trials;
        failures = scan.failures;
        csv << "trials,failures,witness_message,witness_support,decoded\n"
            << trials << ',' << failures << ',';
        if (scan.first) {
            const Witness& w = *scan.first;
            out << "witness message=" << w.message << " support=" << join(w.support)
                << " decoded=" << w.decoded.message << " distance=" << w.decoded.distance << '\n';
            csv << w.message << ',' << '"' << join(w.support) << '"' << ',' << w.decoded.message << '\n';
        } else {
            csv << "NA,NA,NA\n";
        }
    } else {
        csv << "trial,message,weight,decoded,distance,unique,member,ok\n";
        for (std::size_t t = 0; t < cfg.trials && cb.size() > 0; ++t) {
            Rng rng(derive_seed(cfg.seed, t));
            const std::size_t message = uniform_below(rng, cb.size());
            const std::uint64_t noise_seed = rng();
            const NoiseMatrix z = cfg.noise == NoiseKind::uniform
                                      ? noise_uniform(setup.params, noise_seed, weight)
                                      : noise_concentrated(setup.params, cfg.targets, noise_seed, weight);
            const BitMatrix y = transmit(setup.transfer, setup.field, encode(cb, message), z.z);
            const DecodeResult r = decoder.decode(y);
            const bool good = r.message == message;
            ++trials;
            if (!good) ++failures;
            csv << t << ',' << message << ',' << z.z.popcount() << ',' << r.message << ','
                << (r.distance == kInfiniteDistance ? std::string("inf") : std::to_string(r.distance)) << ','
                << (r.unique ? 1 : 0) << ',' << r.member << ',' << (good ? 1 : 0) << '\n';
        }
    }

    out << "trials " << trials << "\nfailures " << failures << '\n';
    if (!csv_path.empty()) write_text_file(csv_path, csv.str());
    if (failures > 0 && cfg.extra_budget == 0) {
        err << "error: decoding failed within the noise budget\n";
        return kFailure;
    }
    return kOk;
}

int cmd_mds_check(const ExperimentConfig& cfg, const std::string& table_path, const std::string& family_path,
                  std::ostream& out) {
    const Setup setup = make_setup(cfg);
    const FieldMatrix& t_hat = setup.transfer.impulse;
    const bool mds = check_every_square_submatrix_invertible(setup.field, t_hat);
    out << "C " << setup.params.capacity << "\nE " << setup.params.edges << "\nm " << setup.params.m
        << "\nattempts " << setup.attempts << "\nsources " << join(setup.transfer.source_edges) << "\nimpulse\n";
    for (std::size_t r = 0; r < t_hat.rows(); ++r) {
        for (std::size_t c = 0; c < t_hat.cols(); ++c) out << (c ? " " : "") << t_hat(r, c).value;
        out << '\n';
    }
    out << "mds " << (mds ? "yes" : "no") << '\n';
    if (!table_path.empty()) {
        const CosetLeaderTable table = build_coset_table(lift_matrix(setup.field, t_hat));
        std::ostringstream buf;
        table.write(buf);
        write_text_file(table_path, buf.str());
    }
    if (!family_path.empty()) {
        const auto family = enumerate_mds_family(setup.field, setup.params.capacity, setup.params.edges,
                                                 setup.transfer.source_edges);
        std::ostringstream buf;
        write_family(buf, setup.params, family);
        write_text_file(family_path, buf.str());
        out << "family " << family.size() << '\n';
    }
    return mds ? kOk : kFailure;
}

} // namespace

ConfigMap parse_config_text(std::istream& in) {
    ConfigMap values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        values[key] = trim(line.substr(eq + 1));
    }
    return values;
}

ConfigMap load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config " + path);
    return parse_config_text(in);
}

ExperimentConfig to_experiment(const ConfigMap& values) {
    ExperimentConfig cfg;
    for (const auto& [key, value] : values) {
        if (key == "network") cfg.network = value;
        else if (key == "C") cfg.capacity = parse_u64(key, value);
        else if (key == "E") cfg.edges = parse_u64(key, value);
        else if (key == "m") cfg.m = static_cast<unsigned>(parse_u64(key, value));
        else if (key == "n") cfg.n = parse_u64(key, value);
        else if (key == "p") cfg.p = Rational::parse(value);
        else if (key == "seed") cfg.seed = parse_u64(key, value);
        else if (key == "mode") cfg.mode = parse_coding_mode(value);
        else if (key == "noise") cfg.noise = parse_noise(value);
        else if (key == "targets") cfg.targets = parse_list<std::size_t>(key, value);
        else if (key == "trials") cfg.trials = parse_u64(key, value);
        else if (key == "family") cfg.family_file = value;
        else if (key == "retries") cfg.retries = parse_u64(key, value);
        else if (key == "extra_budget") cfg.extra_budget = parse_u64(key, value);
        else throw std::invalid_argument("unknown config key '" + key + "'");
    }
    if (cfg.noise == NoiseKind::concentrated && cfg.targets.empty())
        throw std::invalid_argument("concentrated noise needs targets");
    return cfg;
}

Setup make_setup(const ExperimentConfig& cfg) {
    if (cfg.m < 1 || cfg.m > Field::kMaxBits) throw std::invalid_argument("m must be in 1..16");
    Field field(cfg.m);
    if (cfg.network == "synthetic") {
        if (cfg.capacity == 0 || cfg.edges < cfg.capacity)
            throw std::invalid_argument("synthetic network needs 1 <= C <= E");
        ChannelParams params{cfg.capacity, cfg.edges, cfg.m, cfg.n, cfg.p};
        params.validate();
        TransferPair tp = cfg.capacity + cfg.edges <= field.order()
                              ? cauchy_transfer(field, cfg.capacity, cfg.edges)
                              : random_mds_transfer(field, cfg.capacity, cfg.edges, derive_seed(cfg.seed, 0),
                                                    cfg.retries);
        return {field, params, std::move(tp), 1};
    }
    const Network net = load_network(cfg.network);
    const NetworkShape shape = validate_network(net);
    if ((cfg.capacity != 0 && cfg.capacity != shape.capacity) || (cfg.edges != 0 && cfg.edges != shape.edges))
        throw std::invalid_argument("C/E in the config disagree with the network file");
    ChannelParams params{shape.capacity, shape.edges, cfg.m, cfg.n, cfg.p};
    params.validate();
    MdsSample sample = sample_until_mds(net, field, cfg.seed, cfg.retries);
    return {field, params, std::move(sample.transfer), sample.attempts};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"binary-noise network coding toolkit", "binec"};
    app.require_subcommand(1);

    unsigned vf_m = 0;
    std::uint64_t vf_samples = 200000;
    auto* verify = app.add_subcommand("verify-field", "check the field/bit-matrix isomorphism");
    verify->add_option("--m", vf_m, "extension degree (exhaustive for m <= 4)")->required();
    verify->add_option("--samples", vf_samples, "random pairs for m > 4");

    std::string b_p;
    std::size_t b_c = 0, b_e = 0;
    unsigned b_m = 1;
    std::optional<std::size_t> b_n;
    auto* bounds = app.add_subcommand("bounds", "print one rate report row");
    bounds->add_option("--p", b_p)->required();
    bounds->add_option("--C", b_c)->required();
    bounds->add_option("--E", b_e)->required();
    bounds->add_option("--m", b_m);
    bounds->add_option("--n", b_n);

    std::string s_lo = "1/100000", s_hi = "1/1000", s_c = "8,16,32,64", s_e, s_m = "1", s_n, s_csv;
    std::size_t s_steps = 11;
    auto* sweep_cmd = app.add_subcommand("sweep", "rate reports over a parameter grid");
    sweep_cmd->add_option("--p-lo", s_lo);
    sweep_cmd->add_option("--p-hi", s_hi);
    sweep_cmd->add_option("--p-steps", s_steps);
    sweep_cmd->add_option("--C", s_c, "comma-separated");
    sweep_cmd->add_option("--E", s_e, "comma-separated (default: same as C)");
    sweep_cmd->add_option("--m", s_m, "comma-separated");
    sweep_cmd->add_option("--n", s_n, "comma-separated (empty: asymptotic only)");
    sweep_cmd->add_option("--csv", s_csv, "write to file instead of stdout");

    ExperimentFlags build_flags, sim_flags, mds_flags;
    std::string build_out, sim_codebook, sim_csv, table_out, family_out;

    auto* build = app.add_subcommand("build", "construct a GV-type codebook");
    build_flags.attach(*build);
    build->add_option("--codebook", build_out, "output codebook file");

    auto* simulate = app.add_subcommand("simulate", "transmit and decode a codebook");
    sim_flags.attach(*simulate);
    simulate->add_option("--codebook", sim_codebook, "codebook file")->required();
    simulate->add_option("--csv", sim_csv, "per-trial CSV output");

    auto* mds = app.add_subcommand("mds-check", "realize the network code and check the MDS property");
    mds_flags.attach(*mds);
    mds->add_option("--export-table", table_out, "write the coset-leader table of lift(T-hat)");
    mds->add_option("--export-family", family_out, "write the full MDS family");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*verify) return cmd_verify_field(vf_m, vf_samples, out);
        if (*bounds) return cmd_bounds(b_p, b_c, b_e, b_m, b_n, out);
        if (*sweep_cmd) {
            SweepRanges ranges;
            ranges.p = linear_grid(Rational::parse(s_lo), Rational::parse(s_hi), s_steps);
            ranges.capacity = parse_list<std::size_t>("C", s_c);
            ranges.edges = s_e.empty() ? ranges.capacity : parse_list<std::size_t>("E", s_e);
            ranges.m = parse_list<unsigned>("m", s_m);
            ranges.n = parse_list<std::size_t>("n", s_n);
            return cmd_sweep(ranges, s_csv, out);
        }
        if (*build) return cmd_build(build_flags.resolve(), build_out, out, err);
        if (*simulate) return cmd_simulate(sim_flags.resolve(), sim_codebook, sim_csv, out, err);
        if (*mds) return cmd_mds_check(mds_flags.resolve(), table_out, family_out, out);
    } catch (const GuardError& e) {
        err << "guard violation: " << e.what() << '\n';
        return kGuard;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace binec::cli

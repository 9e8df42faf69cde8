#include "upc/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <json.hpp>

#include "upc/config.hpp"
#include "upc/format.hpp"
#include "upc/geometry.hpp"
#include "upc/metrics.hpp"
#include "upc/sinr.hpp"
#include "upc/stats.hpp"
#include "upc/sweep.hpp"

namespace upc::cli {

namespace {

using nlohmann::ordered_json;

std::string dashed(std::string key)
{
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

const std::map<std::string, std::string>& flag_aliases()
{
    static const std::map<std::string, std::string> aliases{
        {"epsilon_grid", "--eps-grid"},     {"target_sinr_db", "--target-db"},
        {"master_seed", "--seed"},          {"n_trials", "--trials"},
        {"n_distance_bins", "--bins"},      {"cell_radius_m", "--radius"},
        {"weights.a", "--weights-a"},       {"weights.b", "--weights-b"},
        {"weights.c", "--weights-c"},
    };
    return aliases;
}

/// Options shared by every subcommand: one flag per config key plus the run
/// controls.
struct CommonOptions {
    std::string config_path;
    std::string out_dir = ".";
    int workers = 1;
    bool interference_limited = false;
    bool bandwidth_penalty = false;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;

    void attach(CLI::App& app)
    {
        app.add_option("--config", config_path, "Config file (key = value), applied before flags")
            ->check(CLI::ExistingFile);
        app.add_option("--out-dir", out_dir, "Directory for CSV and manifest output");
        app.add_option("--workers", workers, "Parallel workers; results do not depend on it")
            ->check(CLI::PositiveNumber);
        app.add_flag("--interference-limited", interference_limited,
                     "Drop thermal noise (noise PSD = -inf)");
        for (const auto& key : config_keys()) {
            if (key == "bandwidth_penalty") {
                app.add_flag("--bandwidth-penalty", bandwidth_penalty,
                             "Scale FR3 rates by 1/3 for the reuse bandwidth split");
                continue;
            }
            std::string names = "--" + dashed(key);
            if (const auto it = flag_aliases().find(key); it != flag_aliases().end()) {
                names += "," + it->second;
            }
            options[key] = app.add_option(names, values[key], "Config key " + key);
        }
    }

    std::vector<Override> overrides() const
    {
        std::vector<Override> out;
        for (const auto& key : config_keys()) {
            const auto it = options.find(key);
            if (it != options.end() && it->second->count() > 0) {
                out.emplace_back(key, values.at(key));
            }
        }
        if (interference_limited) {
            out.emplace_back("noise_psd_dbm_hz", "-inf");
        }
        if (bandwidth_penalty) {
            out.emplace_back("bandwidth_penalty", "true");
        }
        return out;
    }
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("config", "cannot read config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Defaults (per subcommand) < UPC_SIM_SEED < config file < flags.
SimConfig resolve_config(SimConfig base, const CommonOptions& opts)
{
    if (const char* env = std::getenv("UPC_SIM_SEED"); env != nullptr && *env != '\0') {
        base = merge_overrides(base, std::vector<Override>{{"master_seed", env}});
    }
    if (!opts.config_path.empty()) {
        try {
            base = parse_config(read_file(opts.config_path), base);
        } catch (const ConfigError& e) {
            throw ConfigError(e.key(), opts.config_path + ": " + e.what(), e.line());
        }
    }
    return merge_overrides(base, opts.overrides());
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

struct RunContext {
    std::string subcommand;
    SimConfig config;
    Execution exec;
    std::filesystem::path out_dir;
    std::vector<std::string> outputs;
    ordered_json summary = ordered_json::object();

    void write(const CsvTable& table, const std::string& name)
    {
        const auto path = out_dir / name;
        emit_csv(table, path);
        outputs.push_back(path.string());
    }

    void write_manifest() const
    {
        const std::string text = serialize_config(config);
        ordered_json m;
        m["subcommand"] = subcommand;
        m["version"] = kVersion;
        ordered_json cfg = ordered_json::object();
        std::istringstream lines(text);
        for (std::string line; std::getline(lines, line);) {
            const auto [key, value] = split_override(line);
            cfg[key] = value;
        }
        m["config"] = cfg;
        m["config_text"] = text;
        m["config_hash"] = git_blob_hash(text);
        m["timestamp"] = utc_timestamp();
        m["workers"] = exec.workers;
        m["outputs"] = outputs;
        m["summary"] = summary;
        const auto path = out_dir / (subcommand + ".manifest.json");
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write '" + path.string() + "'");
        }
        out << m.dump(2) << '\n';
    }
};

void power_sweep(RunContext& ctx, std::ostream& out)
{
    const auto& c = ctx.config;
    CsvTable table{{"epsilon", "p_avg_closed", "p_avg_mc", "stderr"}, {}};
    const auto key = power_key(c.master_seed);
    for (const double eps : c.epsilon_grid) {
        const double closed = avg_tx_power_closed(eps, c.alpha);
        const auto mc = avg_tx_power_mc(eps, c.alpha, c.cell_radius_m, c.n_trials, key, ctx.exec);
        table.rows.push_back(
            {format_sig6(eps), format_sig6(closed), format_sig6(mc.value), format_sig6(mc.std_error)});
    }
    ctx.write(table, "power_sweep.csv");
    const double first = avg_tx_power_closed(c.epsilon_grid.front(), c.alpha);
    const double last = avg_tx_power_closed(c.epsilon_grid.back(), c.alpha);
    ctx.summary["p_avg_first"] = first;
    ctx.summary["p_avg_last"] = last;
    out << "power-sweep: " << c.epsilon_grid.size() << " points, alpha=" << format_sig6(c.alpha)
        << ", P_avg " << format_sig6(first) << " -> " << format_sig6(last) << '\n';
}

void coverage(RunContext& ctx, const std::vector<double>& eps_list, std::ostream& out)
{
    const auto& c = ctx.config;
    for (const double eps : eps_list) {
        if (!(eps >= 0.0 && eps <= 1.0)) {
            throw ConfigError("eps", "--eps values must lie in [0,1]");
        }
    }
    ordered_json edges = ordered_json::object();
    for (const double eps : eps_list) {
        const auto curve = coverage_curve(c, eps, c.reuse, ctx.exec);
        CsvTable table{{"r_m", "coverage", "stderr", "n"}, {}};
        for (const auto& bin : curve.bins) {
            table.rows.push_back({format_sig6(bin.r_mid), format_sig6(bin.coverage),
                                  format_sig6(bin.std_error), std::to_string(bin.n)});
        }
        ctx.write(table, "coverage_" + to_string(c.reuse) + "_eps" + format_sig6(eps) + ".csv");
        edges[format_sig6(eps)] = curve.bins.back().coverage;
    }
    ctx.summary["outer_bin_coverage"] = edges;
    out << "coverage: " << to_string(c.reuse) << ", " << eps_list.size() << " curves x "
        << c.n_distance_bins << " bins, alpha=" << format_sig6(c.alpha)
        << ", T=" << format_sig6(c.target_sinr_db) << " dB\n";
}

void rate_sweep(RunContext& ctx, const std::vector<std::string>& reuses,
                const std::vector<double>& alphas, std::ostream& out)
{
    CsvTable table{{"epsilon", "reuse", "alpha", "rate_nats", "stderr"}, {}};
    for (const auto& reuse_text : reuses) {
        const Reuse reuse = parse_reuse(reuse_text);
        for (const double alpha : alphas) {
            SimConfig c = ctx.config;
            c.alpha = alpha;
            validate(c);
            const auto key = rate_key(c.master_seed);
            for (const double eps : c.epsilon_grid) {
                const auto rate = avg_rate(c, eps, reuse, key, ctx.exec);
                table.rows.push_back({format_sig6(eps), to_string(reuse), format_sig6(alpha),
                                      format_sig6(rate.value), format_sig6(rate.std_error)});
            }
        }
    }
    ctx.write(table, "rate_sweep.csv");
    out << "rate-sweep: " << reuses.size() * alphas.size() << " series x "
        << ctx.config.epsilon_grid.size() << " points\n";
}

void cost_sweep(RunContext& ctx, std::ostream& out)
{
    const auto& c = ctx.config;
    const auto table = sweep_epsilon(c, c.reuse, ctx.exec);
    const auto& presets = weight_presets();
    std::array<std::vector<CostBreakdown>, 3> curves;
    for (std::size_t s = 0; s < presets.size(); ++s) {
        curves[s] = cost_curve(table, presets[s]);
    }
    CsvTable csv{{"epsilon", "p_avg", "edge_cov", "rate_nats", "j_set1", "j_set2", "j_set3"}, {}};
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        csv.rows.push_back({format_sig6(row.epsilon), format_sig6(row.p_avg),
                            format_sig6(row.edge_coverage.value),
                            format_sig6(row.avg_rate_nats.value), format_sig6(curves[0][i].j),
                            format_sig6(curves[1][i].j), format_sig6(curves[2][i].j)});
    }
    ctx.write(csv, "cost_sweep.csv");

    ordered_json selected = ordered_json::array();
    out << "cost-sweep: " << to_string(c.reuse) << ", alpha=" << format_sig6(c.alpha) << ", "
        << to_string(c.normalization) << "; argmax epsilon";
    for (std::size_t s = 0; s < presets.size(); ++s) {
        const auto best = select_epsilon(table, presets[s]);
        selected.push_back(best.epsilon);
        out << " set" << s + 1 << "=" << format_sig6(best.epsilon);
    }
    const auto own = select_epsilon(table, c.weights);
    out << " config=" << format_sig6(own.epsilon) << '\n';
    ctx.summary["selected_epsilon_presets"] = selected;
    ctx.summary["selected_epsilon_config_weights"] = own.epsilon;
}

int selftest(RunContext& ctx, std::ostream& out)
{
    const auto checks = run_selftest(ctx.config.master_seed, ctx.exec);
    bool all = true;
    ordered_json results = ordered_json::object();
    for (const auto& check : checks) {
        out << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
        results[check.name] = check.passed;
        all = all && check.passed;
    }
    ctx.summary["checks"] = results;
    out << "selftest: " << (all ? "all checks passed" : "FAILED") << '\n';
    return all ? kOk : kRuntimeError;
}

}  // namespace

std::string render_csv(const CsvTable& table)
{
    std::string text;
    auto append = [&text](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i != 0) {
                text += ',';
            }
            text += cells[i];
        }
        text += '\n';
    };
    append(table.header);
    for (const auto& row : table.rows) {
        append(row);
    }
    return text;
}

void emit_csv(const CsvTable& table, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << render_csv(table);
    if (!out) {
        throw std::runtime_error("write failed for '" + path.string() + "'");
    }
}

std::string git_blob_hash(std::string_view content)
{
    const std::string header = "blob " + std::to_string(content.size()) + '\0';
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> md(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (!md || EVP_DigestInit_ex(md.get(), EVP_sha1(), nullptr) != 1 ||
        EVP_DigestUpdate(md.get(), header.data(), header.size()) != 1 ||
        EVP_DigestUpdate(md.get(), content.data(), content.size()) != 1 ||
        EVP_DigestFinal_ex(md.get(), digest.data(), &len) != 1) {
        throw std::runtime_error("SHA-1 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

std::vector<SelfTestCheck> run_selftest(std::uint64_t master_seed, Execution exec)
{
    std::vector<SelfTestCheck> checks;
    const SeedKey root{master_seed, tag_of("selftest")};

    {
        const double alpha = 4.0;
        const std::int64_t n = 100000;
        double worst = 0.0;
        for (const double eps : SimConfig::default_epsilon_grid()) {
            const auto mc = avg_tx_power_mc(eps, alpha, 500.0, n, root.derive("power"), exec);
            const double diff = std::abs(mc.value - avg_tx_power_closed(eps, alpha));
            worst = std::max(worst, mc.std_error > 0.0 ? diff / mc.std_error : diff * 1e12);
        }
        checks.push_back({"closed_form_power", worst < 3.0,
                          "max |MC - closed| = " + format_sig6(worst) + " stderr (limit 3)"});
    }

    {
        SimConfig config;
        const auto layout = build_layout(config.cell_radius_m);
        const auto cochannel = cochannel_set(layout, Reuse::FR1);
        const PowerControl pc{0.5, 3.0, config.cell_radius_m, SinrMode::Normalized};
        const auto noise = noise_variance_norm(config);
        const double target = db_to_linear(0.0);
        RandomStream geo(root.derive("drops"), 0);
        double worst = 0.0;
        for (int k = 0; k < 5; ++k) {
            const auto drop = sample_drop(layout, cochannel, geo);
            RandomStream fad(root.derive("fading"), static_cast<std::uint64_t>(k));
            FadingDraw f;
            const int draws = 50000;
            int hits = 0;
            for (int t = 0; t < draws; ++t) {
                sample_fading(fad, drop.interferers.size(), f);
                hits += instantaneous_sinr(drop, f, pc, noise).eta > target ? 1 : 0;
            }
            const double oracle = conditional_coverage(drop, pc, noise, target);
            worst = std::max(worst, std::abs(hits / static_cast<double>(draws) - oracle));
        }
        checks.push_back({"oracle_vs_fading_mc", worst < 0.01,
                          "max |indicator MC - oracle| = " + format_sig6(worst) + " (limit 0.01)"});
    }

    {
        const double radius = 500.0;
        RandomStream rng(root.derive("radius"), 0);
        std::vector<double> samples(100000);
        for (auto& s : samples) {
            s = sample_radius(rng, radius);
        }
        const double ks =
            ks_statistic(samples, [radius](double r) { return (r / radius) * (r / radius); });
        checks.push_back(
            {"radius_cdf", ks < 0.01, "KS statistic = " + format_sig6(ks) + " (limit 0.01)"});
    }

    {
        SimConfig config;
        config.n_trials = 6000;
        const auto key = root.derive("determinism");
        const Execution serial{1};
        const Execution wide{std::max(4, exec.workers)};
        const auto r1 = avg_rate(config, 0.5, Reuse::FR1, key, serial);
        const auto r2 = avg_rate(config, 0.5, Reuse::FR1, key, wide);
        const auto e1 = edge_coverage(config, 0.5, Reuse::FR3, key, serial);
        const auto e2 = edge_coverage(config, 0.5, Reuse::FR3, key, wide);
        const bool same = r1.value == r2.value && r1.std_error == r2.std_error &&
                          e1.value == e2.value && e1.std_error == e2.std_error;
        checks.push_back({"worker_determinism", same,
                          same ? "1 and " + std::to_string(wide.workers) + " workers agree bitwise"
                               : "results differ between worker counts"});
    }
    return checks;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Uplink fractional power control Monte Carlo simulator", "upc_sim"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    struct Sub {
        CLI::App* app;
        CommonOptions opts;
    };
    std::map<std::string, std::unique_ptr<Sub>> subs;
    auto add_sub = [&](const std::string& name, const std::string& help) {
        auto sub = std::make_unique<Sub>();
        sub->app = app.add_subcommand(name, help);
        sub->opts.attach(*sub->app);
        return subs.emplace(name, std::move(sub)).first->second.get();
    };

    add_sub("power-sweep", "Average normalized transmit power vs epsilon (alpha defaults to 4)");
    std::string eps_list_text = "0,0.25,0.5,0.75,1";
    add_sub("coverage", "Coverage probability vs distance, one CSV per epsilon")
        ->app->add_option("--eps", eps_list_text, "Comma-separated epsilon values")
        ->capture_default_str();
    std::vector<std::string> rate_reuses{"fr1", "fr3"};
    std::vector<double> rate_alphas{3.0, 4.0};
    {
        auto* sub = add_sub("rate-sweep", "Average rate vs epsilon per (reuse, alpha) series");
        sub->app->add_option("--reuses", rate_reuses, "Reuse series")->delimiter(',')
            ->capture_default_str();
        sub->app->add_option("--alphas", rate_alphas, "Path-loss exponent series")->delimiter(',')
            ->capture_default_str();
    }
    add_sub("cost-sweep", "Metric table and cost function J for the preset weight sets");
    add_sub("selftest", "Oracle and determinism checks; exit 0 iff all pass");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    std::string name;
    Sub* sub = nullptr;
    for (auto& [n, s] : subs) {
        if (s->app->parsed()) {
            name = n;
            sub = s.get();
        }
    }

    RunContext ctx;
    ctx.subcommand = name;
    try {
        SimConfig base;
        if (name == "power-sweep") {
            base.alpha = 4.0;
        }
        ctx.config = resolve_config(base, sub->opts);
        ctx.exec = Execution{sub->opts.workers};
        ctx.out_dir = sub->opts.out_dir;
        std::filesystem::create_directories(ctx.out_dir);

        int code = kOk;
        if (name == "power-sweep") {
            power_sweep(ctx, out);
        } else if (name == "coverage") {
            coverage(ctx, parse_epsilon_grid(eps_list_text), out);
        } else if (name == "rate-sweep") {
            rate_sweep(ctx, rate_reuses, rate_alphas, out);
        } else if (name == "cost-sweep") {
            cost_sweep(ctx, out);
        } else {
            code = selftest(ctx, out);
        }
        ctx.write_manifest();
        return code;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}

}  // namespace upc::cli

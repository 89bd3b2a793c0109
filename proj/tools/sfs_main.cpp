// sfs: attractors of function systems, SFS trajectories, and subdivision.
//
// Subcommands: attractor | trajectory | subdivide | diagnose | catalog.
// Exit codes: 0 success, 2 usage/input error, 3 numerical non-convergence
// (partial artifacts are still written).

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>

#include "sfs/descriptors.hpp"
#include "sfs/io.hpp"
#include "sfs/trajectory.hpp"

namespace fs = std::filesystem;
using namespace sfs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;

fs::path with_suffix(const fs::path& base, const std::string& tag, const std::string& ext) {
    fs::path p = base;
    p.replace_filename(p.stem().string() + tag + ext);
    return p;
}

std::string format_ext(const std::string& format) {
    if (format == "json") return ".json";
    if (format == "svg") return ".svg";
    return ".csv";
}

void write_cloud(const std::string& format, const fs::path& path, const PointSet& cloud) {
    if (format == "json")
        atomic_write(path, json_points_string(cloud));
    else if (format == "svg")
        atomic_write(path, svg_scatter(cloud));
    else
        atomic_write(path, csv_string(cloud));
}

bool is_file(const std::string& ref) { return fs::exists(ref) && !fs::is_directory(ref); }

SfsSchedule resolve_schedule(const std::string& ref_text, const PointSet* polygon,
                             std::optional<uint64_t> seed_flag) {
    if (is_file(ref_text)) return schedule_from_json(load_json_file(ref_text));
    CatalogRef ref = parse_catalog_ref(ref_text);
    if (seed_flag && !ref.seed) ref.seed = *seed_flag;
    return catalog_schedule(ref, polygon);
}

MaskSequence resolve_masks(const std::string& ref_text, std::optional<uint64_t> seed_flag) {
    if (is_file(ref_text))
        return MaskSequence::constant(load_mask_file(ref_text), fs::path(ref_text).stem().string());
    CatalogRef ref = parse_catalog_ref(ref_text);
    if (seed_flag && !ref.seed) ref.seed = *seed_flag;
    return catalog_mask_sequence(ref);
}

// Contraction certificate. A system whose raw factor reaches 1 can still be
// fine when some l-term composition contracts; for two-map systems that fix
// the last coordinate (lifted, constants-reproducing) the search runs on the
// G blocks, which is the only place compositions can contract.
struct Certificate {
    bool contractive_directly = false;
    bool certified = false;
    int ell = 0;
    double word_norm = 0.0;
};

Certificate certify(const FunctionSystem& f) {
    Certificate cert;
    cert.word_norm = contraction_factor(f);
    if (cert.word_norm < 1.0) {
        cert.contractive_directly = true;
        cert.certified = true;
        cert.ell = 1;
        return cert;
    }
    const int n = f.dim();
    if (f.count() != 2 || n < 2) return cert;
    for (const auto& m : f.maps()) {
        if (norm2(m.b) != 0.0) return cert;
        for (int c = 0; c < n - 1; ++c)
            if (std::fabs(m.a(n - 1, c)) > 1e-10) return cert;
        if (std::fabs(m.a(n - 1, n - 1) - 1.0) > 1e-10) return cert;
    }
    auto blocks = [&](int, int r) {
        const Mat& a = f.map(r - 1).a;
        Mat g(n - 1, n - 1);
        for (int i = 0; i < n - 1; ++i)
            for (int j = 0; j < n - 1; ++j) g(i, j) = a(j, i);  // back to row action
        return g;
    };
    const auto search = composition_contractivity_search(blocks, 1, 10);
    cert.certified = search.found;
    cert.ell = search.ell;
    cert.word_norm = search.max_word_norm;
    return cert;
}

json schedule_metadata(const SfsSchedule& sched) {
    json j;
    j["description"] = sched.description();
    j["dim"] = sched.dim();
    if (sched.period() > 0 && sched.period() <= 16) {
        j["period"] = sched.period();
        auto systems = json::array();
        for (int k = 1; k <= sched.period(); ++k) systems.push_back(system_to_json(sched.system(k)));
        j["systems"] = std::move(systems);
    }
    if (sched.lifted())
        j["lift"] = {{"n", sched.lifted()->n},
                     {"m", sched.lifted()->m},
                     {"constants_reproduced", sched.lifted()->constants_reproduced}};
    return j;
}

// --config file.json: inject "--key value" tokens for keys the user did not
// pass explicitly. Runs before CLI11 sees the arguments.
std::vector<std::string> merge_config_tokens(const std::vector<std::string>& args) {
    std::string config_path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (config_path.empty()) return args;

    const json cfg = load_json_file(config_path);
    if (!cfg.is_object()) throw Error("config file must be a JSON object");

    auto user_has = [&](const std::string& key) {
        std::vector<std::string> flags{"--" + key};
        if (key == "output") flags.push_back("-o");  // the one short alias
        for (const auto& flag : flags)
            for (const auto& a : args)
                if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };

    std::vector<std::string> merged = args;
    for (auto& [key, value] : cfg.items()) {
        if (key == "config" || user_has(key)) continue;
        merged.push_back("--" + key);
        if (value.is_boolean()) {
            if (!value.get<bool>()) merged.pop_back();  // false flag: omit
            continue;
        }
        if (value.is_string())
            merged.push_back(value.get<std::string>());
        else if (value.is_array()) {
            std::string list;
            for (const auto& item : value)
                list += (list.empty() ? "" : ",") +
                        (item.is_string() ? item.get<std::string>() : item.dump());
            merged.push_back(list);
        } else {
            merged.push_back(value.dump());
        }
    }
    return merged;
}

struct Options {
    std::string scheme, schedule, mask;
    std::string direction = "backward";
    std::vector<int> depths;
    int depth = 0;
    int levels = 6;
    int horizon = 60;
    double epsilon = 1e-4;
    double tol = 1e-6;
    std::optional<uint64_t> seed;
    std::string output;
    std::string format = "csv";
    std::string input;
    std::string start;
    std::string config;
    bool assume_contractive = false;
    bool catalog_json = false;
};

int cmd_attractor(const Options& opt) {
    FunctionSystem f = [&] {
        if (is_file(opt.scheme)) return system_from_json(load_json_file(opt.scheme));
        CatalogRef ref = parse_catalog_ref(opt.scheme);
        if (opt.seed && !ref.seed) ref.seed = *opt.seed;
        return catalog_system(ref);
    }();

    // lifted catalog systems bring their own start and projection
    std::shared_ptr<const LiftedContext> ctx;
    if (!is_file(opt.scheme)) {
        const CatalogRef ref = parse_catalog_ref(opt.scheme);
        if (ref.name == "cubic_spline")
            ctx = cubic_spline_schedule(static_cast<int>(ref.get("n", 5))).lifted();
    }

    const Certificate cert = certify(f);
    if (!cert.certified && !opt.assume_contractive)
        throw Error("scheme is not certified contractive (factor " +
                    std::to_string(contraction_factor(f)) +
                    "); pass --assume-contractive to force iteration");

    PointSet start = !opt.start.empty() ? read_csv_points(opt.start)
                     : ctx              ? ctx->start
                                        : PointSet(f.dim(), Vec(f.dim(), 0.0));
    if (start.dim() != f.dim()) throw Error("starting set dimension differs from the scheme");

    const bool depth_mode = opt.depth > 0;
    const auto r = ifs_attractor(f, start, depth_mode ? 0.0 : opt.tol,
                                 depth_mode ? opt.depth : 200, opt.epsilon, true);

    PointSet cloud = r.set;
    if (ctx && ctx->m >= 1 && cloud.dim() > ctx->m) cloud = project(cloud, ctx->m);

    const fs::path out_path =
        opt.output.empty() ? fs::path("attractor" + format_ext(opt.format)) : fs::path(opt.output);
    write_cloud(opt.format, out_path, cloud);

    json meta;
    meta["scheme"] = opt.scheme;
    meta["iterations"] = r.iterations;
    meta["converged"] = r.converged;
    meta["final_step"] = r.final_step;
    meta["hausdorff_steps"] = r.h_steps;
    meta["contraction_factor"] = r.contraction;
    if (std::isfinite(r.apriori_bound)) meta["apriori_bound"] = r.apriori_bound;
    meta["epsilon"] = opt.epsilon;
    meta["points"] = cloud.size();
    meta["certificate"] = {{"contractive", cert.contractive_directly},
                           {"ell", cert.ell},
                           {"word_norm", cert.word_norm}};
    atomic_write(with_suffix(out_path, "", ".meta.json"), meta.dump(2) + "\n");
    return r.converged ? kExitOk : kExitNoConvergence;
}

int cmd_trajectory(const Options& opt) {
    std::optional<PointSet> polygon;
    if (!opt.input.empty()) polygon = read_csv_points(opt.input);
    const SfsSchedule sched =
        resolve_schedule(opt.schedule, polygon ? &*polygon : nullptr, opt.seed);
    const PointSet start = !opt.start.empty() ? read_csv_points(opt.start)
                           : sched.lifted()   ? sched.lifted()->start
                                              : PointSet(sched.dim(), Vec(sched.dim(), 0.0));
    const auto run = opt.direction == "forward"
                         ? forward_trajectory(sched, start, opt.depths, opt.epsilon)
                         : backward_trajectory(sched, start, opt.depths, opt.epsilon);

    const fs::path base = opt.output.empty() ? fs::path("trajectory.csv") : fs::path(opt.output);
    const std::string ext = format_ext(opt.format);
    json meta;
    meta["schedule"] = schedule_metadata(sched);
    meta["direction"] = opt.direction;
    meta["depths"] = run.depths;
    meta["epsilon"] = opt.epsilon;
    meta["hausdorff_steps"] = run.step_hausdorff;
    auto files = json::array();
    for (size_t i = 0; i < run.sets.size(); ++i) {
        PointSet cloud = run.sets[i];
        if (sched.lifted() && sched.lifted()->m >= 1 && cloud.dim() > sched.lifted()->m)
            cloud = project(cloud, sched.lifted()->m);
        const fs::path path = with_suffix(base, "_k" + std::to_string(run.depths[i]), ext);
        write_cloud(opt.format, path, cloud);
        files.push_back(path.filename().string());
    }
    meta["files"] = std::move(files);

    std::vector<double> factors;
    for (int k = 1; k <= opt.depths.back(); ++k) factors.push_back(sched.factor(k));
    const auto diag = product_diagnostic({factors.data(), factors.size()});
    meta["factors"] = factors;
    meta["product_diagnostic"] = {{"classification", to_string(diag.classification)},
                                  {"tail_ratio", diag.tail_ratio}};
    atomic_write(with_suffix(base, "", ".meta.json"), meta.dump(2) + "\n");
    return kExitOk;
}

int cmd_subdivide(const Options& opt) {
    const MaskSequence masks = resolve_masks(opt.mask, opt.seed);
    const PointSet p0 = read_csv_points(opt.input);
    const PointSet refined = subdivide_levels(masks, p0, opt.levels);
    const fs::path out_path =
        opt.output.empty() ? fs::path("subdivide" + format_ext(opt.format)) : fs::path(opt.output);
    write_cloud(opt.format, out_path, refined);

    json meta;
    meta["mask"] = opt.mask;
    meta["levels"] = opt.levels;
    meta["points"] = refined.size();
    if (opt.levels >= 2) {
        const auto est = c0_convergence_estimate(masks, p0, opt.levels);
        meta["convergence"] = {{"classification", to_string(est.classification)},
                               {"max_adjacent_diff", est.max_adjacent_diff},
                               {"hausdorff_steps", est.hausdorff_steps},
                               {"delta_ratios", est.delta_ratios},
                               {"tail_delta_ratio", est.mean_tail_delta_ratio}};
    }
    atomic_write(with_suffix(out_path, "", ".meta.json"), meta.dump(2) + "\n");
    return kExitOk;
}

int cmd_diagnose(const Options& opt) {
    const SfsSchedule sched = resolve_schedule(opt.schedule, nullptr, opt.seed);
    json report;
    report["schedule"] = schedule_metadata(sched);
    report["horizon"] = opt.horizon;

    std::vector<double> factors;
    for (int k = 1; k <= opt.horizon; ++k) factors.push_back(sched.factor(k));
    const auto diag = product_diagnostic({factors.data(), factors.size()});
    report["factors"] = factors;
    report["product_diagnostic"] = {{"classification", to_string(diag.classification)},
                                    {"tail_ratio", diag.tail_ratio},
                                    {"partial_products", diag.partial_products},
                                    {"partial_sums", diag.partial_sums}};

    const auto cert = certify(sched.system(1));
    report["composition_search"] = {{"certified", cert.certified},
                                    {"ell", cert.ell},
                                    {"word_norm", cert.word_norm}};

    std::string classification = "none";
    if (sched.lifted()) {
        const auto& masks = sched.lifted()->masks;
        const int m_dim = std::max(1, sched.lifted()->m);
        const PointSet control = project(sched.lifted()->start, m_dim);

        bool constants_all = true;
        auto flags = json::array();
        for (int k = 1; k <= std::min(opt.horizon, 32); ++k) {
            const bool ok = check_constant_reproduction(masks.mask(k)).ok;
            flags.push_back(ok);
            constants_all = constants_all && ok;
        }
        report["constants_reproduction"] = flags;

        // tail movement of the masks: near zero means they converge
        const Mask last = masks.mask(opt.horizon);
        double tail_move = 0.0;
        for (int k = opt.horizon - 4; k < opt.horizon; ++k)
            for (int j = last.min_index(); j <= last.max_index(); ++j)
                tail_move = std::max(tail_move, std::fabs(masks.mask(k).at(j) - last.at(j)));
        const bool masks_converge = tail_move < 1e-6;
        report["mask_tail_movement"] = tail_move;

        bool limit_c0 = false;
        if (masks_converge) {
            const auto est =
                c0_convergence_estimate(MaskSequence::constant(last), control, 8);
            limit_c0 = est.classification == ConvergenceEstimate::Class::C0Like;
            report["limit_mask_c0_like"] = limit_c0;
        }

        bool scheme_c0 = false;
        try {
            const auto est = c0_convergence_estimate(masks, control, 10);
            scheme_c0 = est.classification == ConvergenceEstimate::Class::C0Like;
            report["scheme_c0_like"] = scheme_c0;
        } catch (const Error&) {
        }

        const bool case_ii = constants_all && masks_converge && limit_c0;
        const bool case_iii = constants_all && diag.sum_converges();
        const bool case_i = scheme_c0;
        report["cases"] = {{"i", case_i}, {"ii", case_ii}, {"iii", case_iii}};
        if (case_ii)
            classification = "case (ii)";
        else if (case_iii)
            classification = "case (iii)";
        else if (case_i)
            classification = "case (i)";
    } else {
        report["cases"] = nullptr;
    }
    report["classification"] = classification;
    report["backward_convergence_expected"] = diag.sum_converges();

    const std::string text = report.dump(2) + "\n";
    if (opt.output.empty())
        std::fputs(text.c_str(), stdout);
    else
        atomic_write(opt.output, text);
    return kExitOk;
}

int cmd_catalog(const Options& opt) {
    if (opt.catalog_json) {
        auto entries = json::array();
        for (const auto& e : catalog_entries()) {
            json je;
            je["name"] = e.name;
            je["kind"] = e.kind;
            je["doc"] = e.doc;
            je["seeded"] = e.seeded;
            auto params = json::array();
            for (const auto& p : e.params)
                params.push_back({{"name", p.name}, {"default", p.value}, {"required", p.required}});
            je["params"] = std::move(params);
            entries.push_back(std::move(je));
        }
        std::fputs((entries.dump(2) + "\n").c_str(), stdout);
    } else {
        for (const auto& e : catalog_entries()) {
            std::string params;
            for (const auto& p : e.params) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%g", p.value);
                params += (params.empty() ? "" : ",") + p.name + "=" + buf;
            }
            if (e.seeded) params += params.empty() ? "seed=N" : ",seed=N";
            std::printf("%-15s %-16s %s%s%s\n", e.name.c_str(), e.kind.c_str(), e.doc.c_str(),
                        params.empty() ? "" : "   params: ", params.c_str());
        }
    }
    return kExitOk;
}

int run_cli(std::vector<std::string> args) {
    CLI::App app{"attractors of iterated and sequential function systems"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", opt.seed, "seed for seeded catalog entries");
        cmd->add_option("--config", opt.config, "JSON config mirroring the long flags");
    };
    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("-o,--output", opt.output, "output path (point cloud)");
        cmd->add_option("--format", opt.format, "csv | json | svg")
            ->check(CLI::IsMember({"csv", "json", "svg"}));
    };

    auto* attractor = app.add_subcommand("attractor", "iterate a Hutchinson operator to its fixed set");
    attractor->add_option("--scheme", opt.scheme, "catalog ref or system descriptor file")->required();
    attractor->add_option("--depth", opt.depth, "fixed iteration count (tolerance mode off)");
    attractor->add_option("--tol", opt.tol, "Hausdorff step tolerance (default 1e-6)");
    attractor->add_option("--epsilon", opt.epsilon, "decimation cell size (0 = off)");
    attractor->add_option("--start", opt.start, "starting set CSV");
    attractor->add_flag("--assume-contractive", opt.assume_contractive,
                        "iterate even without a contraction certificate");
    add_output(attractor);
    add_common(attractor);

    auto* trajectory = app.add_subcommand("trajectory", "forward/backward SFS trajectories");
    trajectory->add_option("--schedule", opt.schedule, "catalog ref or schedule descriptor file")
        ->required();
    trajectory->add_option("--direction", opt.direction, "forward | backward")
        ->check(CLI::IsMember({"forward", "backward"}));
    trajectory->add_option("--depths", opt.depths, "depths, strictly increasing")
        ->required()
        ->delimiter(',');
    trajectory->add_option("--epsilon", opt.epsilon, "decimation cell size (0 = off)");
    trajectory->add_option("--polygon", opt.input, "control polygon CSV (lifted schedules)");
    trajectory->add_option("--start", opt.start, "starting set CSV");
    add_output(trajectory);
    add_common(trajectory);

    auto* subdivide = app.add_subcommand("subdivide", "refine a control polygon");
    subdivide->add_option("--mask", opt.mask, "catalog ref, mask JSON, or Laurent text file")
        ->required();
    subdivide->add_option("--input", opt.input, "control polygon CSV")->required();
    subdivide->add_option("--levels", opt.levels, "refinement levels");
    add_output(subdivide);
    add_common(subdivide);

    auto* diagnose = app.add_subcommand("diagnose", "convergence diagnostics of a schedule");
    diagnose->add_option("--schedule", opt.schedule, "catalog ref or schedule descriptor file")
        ->required();
    diagnose->add_option("--horizon", opt.horizon, "levels to examine");
    diagnose->add_option("-o,--output", opt.output, "report path (default stdout)");
    add_common(diagnose);

    auto* catalog_cmd = app.add_subcommand("catalog", "list catalog entries");
    auto* catalog_list = catalog_cmd->add_subcommand("list", "enumerate entries with parameter schemas");
    catalog_cmd->add_flag("--json", opt.catalog_json, "machine-readable listing");
    catalog_list->add_flag("--json", opt.catalog_json, "machine-readable listing");

    try {
        if (!args.empty()) args = merge_config_tokens(args);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }

    try {
        std::vector<const char*> argv_c;
        argv_c.push_back("sfs");
        for (const auto& a : args) argv_c.push_back(a.c_str());
        app.parse(static_cast<int>(argv_c.size()), argv_c.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") return app.exit(e);
        std::fprintf(stderr, "%s\n", e.what());
        return kExitUsage;
    }

    // format defaults to the output extension when not given explicitly
    if (!opt.output.empty() && app.get_subcommands().size() == 1) {
        CLI::App* active = app.get_subcommands().front();
        CLI::Option* fmt = active->get_option_no_throw("--format");
        if (fmt && fmt->count() == 0) {
            const std::string ext = fs::path(opt.output).extension().string();
            if (ext == ".svg" || ext == ".json") opt.format = ext.substr(1);
        }
    }

    try {
        if (app.got_subcommand(attractor)) return cmd_attractor(opt);
        if (app.got_subcommand(trajectory)) return cmd_trajectory(opt);
        if (app.got_subcommand(subdivide)) return cmd_subdivide(opt);
        if (app.got_subcommand(diagnose)) return cmd_diagnose(opt);
        if (app.got_subcommand(catalog_cmd)) return cmd_catalog(opt);
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    return run_cli(std::vector<std::string>(argv + 1, argv + argc));
}

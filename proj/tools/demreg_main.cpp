#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "demreg/constellation.hpp"
#include "demreg/control_points.hpp"
#include "demreg/error.hpp"
#include "demreg/error_metrics.hpp"
#include "demreg/grid_io.hpp"
#include "demreg/parallel.hpp"
#include "demreg/registration.hpp"
#include "demreg/render.hpp"
#include "demreg/report.hpp"
#include "demreg/synth.hpp"
#include "demreg/tiling.hpp"

namespace {

using namespace demreg;
using nlohmann::json;

// Exit codes: 1 = input parse errors, 2 = usage / incompatible inputs,
// 3 = matching failed. Metric degeneracies downgrade to warnings (exit 0).
constexpr int kExitParse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMatching = 3;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedHeader:
        case ErrorCode::CellCountMismatch:
        case ErrorCode::NonFiniteValue:
        case ErrorCode::MalformedLine:
        case ErrorCode::IoError:
            return kExitParse;
        case ErrorCode::InsufficientMatches:
            return kExitMatching;
        default:
            return kExitUsage;
    }
}

std::string base_name(const std::string& path) {
    return std::filesystem::path(path).filename().string();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) fail(ErrorCode::IoError, "short write to " + path);
}

void write_json_file(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

// ---------------------------------------------------------------- info

int run_info(const std::string& dem_path) {
    const Grid g = read_grid_file(dem_path);
    const GridHeader& h = g.header();
    std::cout << "file: " << base_name(dem_path) << "\n"
              << "ncols: " << h.ncols << "\n"
              << "nrows: " << h.nrows << "\n"
              << "xllcorner: " << format_number(h.xllcorner) << "\n"
              << "yllcorner: " << format_number(h.yllcorner) << "\n"
              << "cellsize: " << format_number(h.cellsize) << "\n"
              << "nodata_value: " << format_number(h.nodata_value) << "\n"
              << "valid cells: " << g.valid_count() << " / " << g.size() << "\n";
    double zmin = 0.0;
    double zmax = 0.0;
    if (g.valid_range(zmin, zmax)) {
        std::cout << "min: " << format_number(zmin) << "\n"
                  << "max: " << format_number(zmax) << "\n";
    } else {
        std::cout << "min: n/a\nmax: n/a\n";
    }
    return 0;
}

// ---------------------------------------------------------------- tile

std::pair<int, int> parse_tile_spec(const std::string& spec) {
    int rows = 0;
    int cols = 0;
    const auto x = spec.find('x');
    try {
        if (x == std::string::npos) {
            rows = cols = std::stoi(spec);
        } else {
            rows = std::stoi(spec.substr(0, x));
            cols = std::stoi(spec.substr(x + 1));
        }
    } catch (const std::exception&) {
        fail(ErrorCode::InvalidTileSize, "cannot parse tile size '" + spec + "'");
    }
    return {rows, cols};
}

int run_tile(const std::string& dem_path, const std::string& out_dir,
             const std::string& tile_spec) {
    const auto [tile_rows, tile_cols] = parse_tile_spec(tile_spec);
    const Grid g = read_grid_file(dem_path);
    const TileSet tiles = partition(g, tile_rows, tile_cols);
    std::filesystem::create_directories(out_dir);
    const std::string stem = std::filesystem::path(dem_path).stem().string();
    for (int i = 0; i < tiles.shape_rows; ++i) {
        for (int j = 0; j < tiles.shape_cols; ++j) {
            const auto path =
                std::filesystem::path(out_dir) / tile_file_name(stem, i, j);
            write_grid_file(path.string(), tiles.tiles[static_cast<size_t>(i) * tiles.shape_cols + j]);
        }
    }
    std::cout << "wrote " << tiles.tiles.size() << " tiles (" << tiles.shape_rows
              << "x" << tiles.shape_cols << " layout) to " << out_dir << "\n";
    return 0;
}

// ---------------------------------------------------------------- register

struct RegisterArgs {
    std::string ref_path;
    std::string cand_path;
    std::string points_path;
    std::string method = "quad-edge";
    double tol_elev = -1.0; // < 0: derive from the candidate grid
    double tol_edge = -1.0;
    double dist_tol = -1.0; // < 0: 1.5 * cellsize
    std::string policy = "reference-priority";
    std::string out_dem = "merged.asc";
    std::string out_render = "merged.ppm";
    std::string out_report = "report.json";
};

struct LocatedPoint {
    ControlPoint point;
    CellIndex cell;
    QuadSignature sig; // reference-side signature (quad-edge only)
};

// Per-point candidate search shared by register and bench. Results are
// written into fixed slots, so the parallel schedule cannot reorder them.
std::vector<std::vector<CandidateMatch>> search_candidates(
    const Grid& cand, const std::vector<LocatedPoint>& points, MatchMethod method,
    const MatchTolerances& tols) {
    std::vector<std::vector<CandidateMatch>> out(points.size());
    parallel_for(static_cast<long>(points.size()), [&](long i) {
        const LocatedPoint& p = points[static_cast<size_t>(i)];
        out[static_cast<size_t>(i)] =
            method == MatchMethod::Direct
                ? direct_match(cand, p.point, tols.tol_elev)
                : quad_edge_match(cand, p.point, p.sig, tols.tol_elev, tols.tol_edge);
    });
    return out;
}

int run_register(const RegisterArgs& a) {
    const Grid ref = read_grid_file(a.ref_path);
    const Grid cand = read_grid_file(a.cand_path);
    const ControlPointFile pf = load_control_points_file(a.points_path);
    std::vector<std::string> warnings = pf.warnings;

    const MatchMethod method =
        a.method == "direct" ? MatchMethod::Direct : MatchMethod::QuadEdge;
    const MergePolicy policy = parse_merge_policy(a.policy);

    MatchTolerances tols = estimate_default_tolerances(cand);
    if (a.tol_elev >= 0.0) tols.tol_elev = a.tol_elev;
    if (a.tol_edge >= 0.0) tols.tol_edge = a.tol_edge;
    const double dist_tol = a.dist_tol >= 0.0 ? a.dist_tol : 1.5 * ref.cellsize();

    if (pf.points.size() < 2) {
        fail(ErrorCode::TooFewPoints, "need at least 2 control points, got " +
                                          std::to_string(pf.points.size()));
    }

    // Locate each point on the reference; points that cannot participate are
    // dropped with a warning rather than aborting the run.
    std::vector<LocatedPoint> usable;
    json points_json = json::array();
    std::set<CellIndex> used_cells;
    for (size_t i = 0; i < pf.points.size(); ++i) {
        const ControlPoint& p = pf.points[i];
        json pj;
        pj["lat"] = p.lat;
        pj["lon"] = p.lon;
        pj["elevation"] = p.elevation;
        pj["cell"] = nullptr;
        pj["usable"] = false;
        bool ok = true;
        CellIndex cell{};
        try {
            cell = geo_to_cell(ref.header(), p.lon, p.lat);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::OutOfBounds) throw;
            warnings.push_back("point " + std::to_string(i + 1) +
                               " lies outside the reference extent; skipped");
            ok = false;
        }
        if (ok && used_cells.count(cell)) {
            warnings.push_back("point " + std::to_string(i + 1) +
                               " duplicates reference cell (" + std::to_string(cell.row) +
                               "," + std::to_string(cell.col) + "); skipped");
            ok = false;
        }
        QuadSignature sig{};
        if (ok && method == MatchMethod::QuadEdge) {
            try {
                sig = quad_signature(ref, cell.row, cell.col);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::BorderCell &&
                    e.code() != ErrorCode::NodataInRing) {
                    throw;
                }
                warnings.push_back("point " + std::to_string(i + 1) +
                                   " has no usable quad ring on the reference; skipped");
                ok = false;
            }
        }
        if (ok) {
            pj["cell"] = {cell.row, cell.col};
            pj["usable"] = true;
            used_cells.insert(cell);
            usable.push_back({p, cell, sig});
        }
        points_json.push_back(std::move(pj));
    }
    if (usable.size() < 2) {
        fail(ErrorCode::TooFewPoints,
             "fewer than 2 control points are usable on the reference");
    }

    const auto cands = search_candidates(cand, usable, method, tols);
    long total_cands = 0;
    for (size_t i = 0; i < usable.size(); ++i) {
        total_cands += static_cast<long>(cands[i].size());
        // points_json rows and usable points are in file order; find the
        // i-th usable row to attach its candidate count.
    }
    {
        size_t u = 0;
        for (auto& pj : points_json) {
            if (pj["usable"].get<bool>()) {
                pj["candidates"] = cands[u].size();
                ++u;
            } else {
                pj["candidates"] = nullptr;
            }
        }
    }

    std::vector<std::pair<ControlPoint, CellIndex>> nodes;
    nodes.reserve(usable.size());
    for (const LocatedPoint& p : usable) nodes.push_back({p.point, p.cell});
    const ParentGraph parent = build_parent_graph(ref.header(), nodes);

    json report;
    report["inputs"] = {{"reference", base_name(a.ref_path)},
                        {"candidate", base_name(a.cand_path)},
                        {"points", base_name(a.points_path)},
                        {"reference_shape", {ref.nrows(), ref.ncols()}},
                        {"candidate_shape", {cand.nrows(), cand.ncols()}}};
    report["method"] = a.method;
    report["policy"] = merge_policy_name(policy);
    report["tolerances"] = {{"tol_elev", tols.tol_elev},
                            {"tol_edge", tols.tol_edge},
                            {"dist_tol", dist_tol}};
    report["points"] = std::move(points_json);

    Correspondence corr;
    try {
        corr = find_correspondence(parent, cands, dist_tol);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InsufficientMatches) throw;
        warnings.push_back(e.what());
        report["correspondence"] = nullptr;
        report["errors"] = nullptr;
        report["false_positives"] = total_cands; // nothing was accepted
        report["warnings"] = warnings;
        write_json_file(a.out_report, report);
        std::cerr << e.what() << "\n"
                  << "diagnostic report written to " << a.out_report << "\n";
        return kExitMatching;
    }

    const Transform transform = estimate_transform(corr);
    const long false_positives = total_cands - static_cast<long>(corr.pairs.size());

    const MergeResult merged = merge_grids(ref, cand, transform, policy);
    if (merged.empty_overlap) {
        warnings.push_back("merged grids do not overlap; metrics skipped");
    }
    const Grid registered = apply_transform(ref, cand, transform);

    std::optional<ErrorReport> metrics;
    try {
        metrics = build_error_report(ref, registered);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoOverlap && e.code() != ErrorCode::EmptySurface) {
            throw;
        }
        if (!merged.empty_overlap) {
            warnings.push_back(std::string("metrics skipped: ") + e.what());
        }
    }
    if (metrics) {
        if (!metrics->t_defined) {
            warnings.push_back("t-statistic undefined: zero variance with nonzero mean");
        }
        if (!metrics->tsc) {
            warnings.push_back("tsc skipped: difference surface has no interior stencil");
        }
        double zmin = 0.0;
        double zmax = 0.0;
        if (ref.valid_range(zmin, zmax) && zmax == zmin) {
            warnings.push_back("reference elevation range is zero; mean_diff_pct reported as 0");
        }
    }

    write_grid_file(a.out_dem, merged.grid);
    write_ppm_file(render_grid(merged.grid), a.out_render);

    report["correspondence"] = to_json(corr);
    report["errors"] = metrics ? to_json(*metrics) : json(nullptr);
    report["false_positives"] = false_positives;
    report["warnings"] = warnings;
    write_json_file(a.out_report, report);

    std::cout << "method: " << a.method << "\n"
              << "offset: (" << transform.drow << ", " << transform.dcol
              << ")  support: " << transform.support << "/" << usable.size() << "\n"
              << "false positives rejected: " << false_positives << "\n";
    if (metrics) {
        std::cout << "n: " << metrics->n << "\n"
                  << "mean_diff: " << format_number(metrics->mean_diff) << " ("
                  << format_number(metrics->mean_diff_pct) << "% of range)\n"
                  << "rmse: " << format_number(metrics->rmse) << "\n"
                  << "tsc: " << (metrics->tsc ? format_number(*metrics->tsc) : "n/a")
                  << "\n"
                  << "t: "
                  << (metrics->t_defined ? format_number(metrics->t_stat) : "n/a")
                  << "  dof: " << metrics->dof << "\n";
    }
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "wrote " << a.out_dem << ", " << a.out_render << ", " << a.out_report
              << "\n";
    return 0;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
    std::uint64_t seed = 1;
    int rows = 129;
    int cols = 129;
    double base = 200.0;
    double amplitude = 400.0;
    double roughness = 0.5;
    std::string offset = "0,0";
    double sigma = 0.0;
    double bias = 0.0;
    int points = 12;
    std::string out_dir = ".";
};

std::pair<int, int> parse_offset(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw CLI::ValidationError("--offset", "expected drow,dcol");
    }
    try {
        return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--offset", "expected drow,dcol");
    }
}

int run_synth(const SynthArgs& a) {
    const auto [drow, dcol] = parse_offset(a.offset);
    SynthSpec spec;
    spec.seed = a.seed;
    spec.rows = a.rows;
    spec.cols = a.cols;
    spec.base_elevation = a.base;
    spec.amplitude = a.amplitude;
    spec.roughness = a.roughness;
    const Grid ref = generate_terrain(spec);
    const DerivedCandidate dc = derive_candidate(ref, drow, dcol, a.sigma, a.bias, a.seed);
    const auto points =
        pick_control_points(ref, overlap_window(ref.header(), dc.truth), a.points);
    if (static_cast<int>(points.size()) < a.points) {
        std::cerr << "warning: only " << points.size() << " of " << a.points
                  << " control points available in the overlap\n";
    }

    std::filesystem::create_directories(a.out_dir);
    const std::filesystem::path dir(a.out_dir);
    write_grid_file((dir / "ref.asc").string(), ref);
    write_grid_file((dir / "cand.asc").string(), dc.grid);

    std::string csv = "# lat,lon,elevation\n";
    for (const auto& [point, cell] : points) {
        csv += format_number(point.lat) + "," + format_number(point.lon) + "," +
               format_number(point.elevation) + "\n";
    }
    write_text_file((dir / "points.csv").string(), csv);

    json truth;
    truth["seed"] = a.seed;
    truth["offset"] = {dc.truth.drow, dc.truth.dcol};
    truth["sigma"] = a.sigma;
    truth["bias"] = a.bias;
    truth["points"] = points.size();
    write_json_file((dir / "truth.json").string(), truth);

    std::cout << "wrote ref.asc, cand.asc, points.csv, truth.json to " << a.out_dir
              << "\n";
    return 0;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
    int seeds = 20;
    int points = 40;
    int rows = 300;
    int cols = 300;
    double sigma = 0.0;
    double quantize = 0.0;
    int decoys = 0;
    int offset_range = 20;
    std::string out_report;
};

struct BenchAccum {
    int trials = 0;
    int fails = 0;
    long false_positives = 0;
    double sum_mean = 0.0;
    double sum_rmse = 0.0;
    double sum_tsc = 0.0;
    int n_tsc = 0;
    double sum_t = 0.0;
    int n_t = 0;
};

int run_bench(const BenchArgs& a) {
    if (a.points < 3) {
        fail(ErrorCode::TooFewPoints, "bench needs at least 3 control points per trial");
    }
    if (a.seeds < 1) {
        fail(ErrorCode::TooFewPoints, "bench needs at least 1 seed");
    }

    const MatchMethod methods[2] = {MatchMethod::Direct, MatchMethod::QuadEdge};
    const char* method_names[2] = {"direct", "quad-edge"};
    BenchAccum acc[2];

    for (int seed = 1; seed <= a.seeds; ++seed) {
        SynthSpec spec;
        spec.seed = static_cast<std::uint64_t>(seed);
        spec.rows = a.rows;
        spec.cols = a.cols;
        const Grid ref = generate_terrain(spec);
        const int range = a.offset_range;
        const int drow = static_cast<int>(hash_u64(spec.seed, 1, 0, 21) %
                                          static_cast<std::uint64_t>(2 * range + 1)) -
                         range;
        const int dcol = static_cast<int>(hash_u64(spec.seed, 2, 0, 22) %
                                          static_cast<std::uint64_t>(2 * range + 1)) -
                         range;
        const DerivedCandidate dc =
            derive_candidate(ref, drow, dcol, a.sigma, 0.0, spec.seed);
        Grid cand = dc.grid;
        const auto points =
            pick_control_points(ref, overlap_window(ref.header(), dc.truth), a.points);
        if (static_cast<int>(points.size()) < 3) {
            acc[0].fails++;
            acc[1].fails++;
            continue;
        }
        if (a.quantize > 0.0) cand = quantize_grid(cand, a.quantize);
        if (a.decoys > 0) {
            std::vector<CellIndex> protect;
            std::vector<double> values;
            for (const auto& [point, cell] : points) {
                const CellIndex cc{cell.row - drow, cell.col - dcol};
                if (cand.in_range(cc.row, cc.col)) protect.push_back(cc);
                values.push_back(a.quantize > 0.0
                                     ? std::floor(point.elevation / a.quantize + 0.5) *
                                           a.quantize
                                     : point.elevation);
            }
            cand = implant_decoys(cand, protect, values, a.decoys,
                                  hash_u64(spec.seed, 3, 0, 23));
        }

        const MatchTolerances tols = estimate_default_tolerances(cand);
        const double dist_tol = 1.5 * ref.cellsize();
        const ParentGraph parent = build_parent_graph(ref.header(), points);

        for (int m = 0; m < 2; ++m) {
            std::vector<LocatedPoint> located;
            located.reserve(points.size());
            bool sig_ok = true;
            for (const auto& [point, cell] : points) {
                LocatedPoint lp{point, cell, {}};
                if (methods[m] == MatchMethod::QuadEdge) {
                    try {
                        lp.sig = quad_signature(ref, cell.row, cell.col);
                    } catch (const Error&) {
                        sig_ok = false;
                        break;
                    }
                }
                located.push_back(lp);
            }
            if (!sig_ok) {
                acc[m].fails++;
                continue;
            }
            const auto cands = search_candidates(cand, located, methods[m], tols);
            long total = 0;
            for (const auto& list : cands) total += static_cast<long>(list.size());
            Correspondence corr;
            try {
                corr = find_correspondence(parent, cands, dist_tol);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::InsufficientMatches) throw;
                acc[m].fails++;
                acc[m].false_positives += total;
                continue;
            }
            const Transform tr = estimate_transform(corr);
            acc[m].false_positives += total - static_cast<long>(corr.pairs.size());
            const Grid registered = apply_transform(ref, cand, tr);
            const ErrorReport er = build_error_report(ref, registered);
            acc[m].trials++;
            acc[m].sum_mean += er.mean_diff;
            acc[m].sum_rmse += er.rmse;
            if (er.tsc) {
                acc[m].sum_tsc += *er.tsc;
                acc[m].n_tsc++;
            }
            if (er.t_defined) {
                acc[m].sum_t += er.t_stat;
                acc[m].n_t++;
            }
        }
    }

    auto cell = [](double sum, int n) {
        return n > 0 ? fmt("%12.6f", sum / n) : std::string("         n/a");
    };
    std::string table;
    char head[160];
    std::snprintf(head, sizeof(head), "%-10s %6s %6s %10s %12s %12s %12s %12s\n",
                  "method", "trials", "fails", "false_pos", "mean_diff", "rmse",
                  "tsc", "t");
    table += head;
    json methods_json = json::array();
    for (int m = 0; m < 2; ++m) {
        char row[160];
        std::snprintf(row, sizeof(row), "%-10s %6d %6d %10ld ", method_names[m],
                      acc[m].trials, acc[m].fails, acc[m].false_positives);
        table += row;
        table += cell(acc[m].sum_mean, acc[m].trials) + " " +
                 cell(acc[m].sum_rmse, acc[m].trials) + " " +
                 cell(acc[m].sum_tsc, acc[m].n_tsc) + " " + cell(acc[m].sum_t, acc[m].n_t) +
                 "\n";
        json mj;
        mj["method"] = method_names[m];
        mj["trials"] = acc[m].trials;
        mj["fails"] = acc[m].fails;
        mj["false_positives"] = acc[m].false_positives;
        mj["mean_diff"] =
            acc[m].trials > 0 ? json(acc[m].sum_mean / acc[m].trials) : json(nullptr);
        mj["rmse"] =
            acc[m].trials > 0 ? json(acc[m].sum_rmse / acc[m].trials) : json(nullptr);
        mj["tsc"] = acc[m].n_tsc > 0 ? json(acc[m].sum_tsc / acc[m].n_tsc) : json(nullptr);
        mj["t"] = acc[m].n_t > 0 ? json(acc[m].sum_t / acc[m].n_t) : json(nullptr);
        methods_json.push_back(std::move(mj));
    }
    std::cout << table;

    if (!a.out_report.empty()) {
        json j;
        j["config"] = {{"seeds", a.seeds},     {"points", a.points},
                       {"rows", a.rows},       {"cols", a.cols},
                       {"sigma", a.sigma},     {"quantize", a.quantize},
                       {"decoys", a.decoys},   {"offset_range", a.offset_range}};
        j["methods"] = std::move(methods_json);
        write_json_file(a.out_report, j);
        std::cout << "wrote " << a.out_report << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DEM-to-DEM registration toolkit for ASCII grids"};
    app.require_subcommand(1);

    std::string info_dem;
    CLI::App* info = app.add_subcommand("info", "Print a DEM summary");
    info->add_option("dem", info_dem, "ASCII grid file")->required();

    std::string tile_dem;
    std::string tile_out_dir;
    std::string tile_spec = "512";
    CLI::App* tile = app.add_subcommand("tile", "Partition a DEM into child tiles");
    tile->add_option("dem", tile_dem, "ASCII grid file")->required();
    tile->add_option("out_dir", tile_out_dir, "output directory")->required();
    tile->add_option("--tile", tile_spec, "tile size N or ROWSxCOLS (default 512)");

    RegisterArgs reg;
    CLI::App* reg_cmd =
        app.add_subcommand("register", "Register a candidate DEM onto a reference");
    reg_cmd->add_option("reference", reg.ref_path, "reference DEM")->required();
    reg_cmd->add_option("candidate", reg.cand_path, "candidate DEM")->required();
    reg_cmd->add_option("points", reg.points_path, "control points CSV")->required();
    reg_cmd->add_option("--method", reg.method, "matching method")
        ->check(CLI::IsMember({"direct", "quad-edge"}));
    reg_cmd->add_option("--tol-elev", reg.tol_elev, "elevation tolerance (meters)");
    reg_cmd->add_option("--tol-edge", reg.tol_edge, "signature tolerance (meters)");
    reg_cmd->add_option("--dist-tol", reg.dist_tol, "edge length tolerance (map units)");
    reg_cmd->add_option("--policy", reg.policy, "overlap policy")
        ->check(CLI::IsMember({"reference-priority", "reference", "candidate-priority",
                               "candidate", "average"}));
    reg_cmd->add_option("--out-dem", reg.out_dem, "merged DEM output path");
    reg_cmd->add_option("--out-render", reg.out_render, "P6 render output path");
    reg_cmd->add_option("--out-report", reg.out_report, "JSON report output path");

    SynthArgs synth;
    CLI::App* synth_cmd =
        app.add_subcommand("synth", "Generate a synthetic reference/candidate pair");
    synth_cmd->add_option("--seed", synth.seed, "terrain seed");
    synth_cmd->add_option("--rows", synth.rows, "grid rows");
    synth_cmd->add_option("--cols", synth.cols, "grid cols");
    synth_cmd->add_option("--base", synth.base, "base elevation (meters)");
    synth_cmd->add_option("--amplitude", synth.amplitude, "elevation range (meters)");
    synth_cmd->add_option("--roughness", synth.roughness, "diamond-square roughness");
    synth_cmd->add_option("--offset", synth.offset, "candidate offset drow,dcol");
    synth_cmd->add_option("--sigma", synth.sigma, "candidate noise sigma (meters)");
    synth_cmd->add_option("--bias", synth.bias, "candidate vertical bias (meters)");
    synth_cmd->add_option("--points", synth.points, "control points to sample");
    synth_cmd->add_option("--out-dir", synth.out_dir, "output directory");

    BenchArgs bench;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "Compare matching methods over seeded trials");
    bench_cmd->add_option("--seeds", bench.seeds, "number of seeded trials");
    bench_cmd->add_option("--points", bench.points, "control points per trial");
    bench_cmd->add_option("--rows", bench.rows, "terrain rows");
    bench_cmd->add_option("--cols", bench.cols, "terrain cols");
    bench_cmd->add_option("--sigma", bench.sigma, "candidate noise sigma (meters)");
    bench_cmd->add_option("--quantize", bench.quantize, "candidate quantization step");
    bench_cmd->add_option("--decoys", bench.decoys, "decoy duplicates per point");
    bench_cmd->add_option("--offset-range", bench.offset_range,
                          "offsets drawn from [-R,R]^2");
    bench_cmd->add_option("--out-report", bench.out_report, "JSON report output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (*info) return run_info(info_dem);
        if (*tile) return run_tile(tile_dem, tile_out_dir, tile_spec);
        if (*reg_cmd) return run_register(reg);
        if (*synth_cmd) return run_synth(synth);
        if (*bench_cmd) return run_bench(bench);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}

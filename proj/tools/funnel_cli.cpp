// Command-line surface for the funnel-transform line detector: synthetic
// scene generation, detection with JSON output, parameter-space rendering,
// and benchmark sweeps as CSV.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "funnel/funnel.hpp"
#include "funnel/pgm.hpp"
#include "funnel/png_io.hpp"
#include "funnel/render.hpp"

namespace {

using namespace funnel;

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

GrayImage load_image(const std::string& path) {
    if (ends_with(path, ".png") || ends_with(path, ".PNG")) return to_gray(read_png_gray(path));
    return to_gray(read_pgm(path));
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string line_record_json(const DetectedLine& d) {
    const RhoTheta rt = line_to_rho_theta(d.line);
    std::ostringstream os;
    os << "{\"space\":\"" << (d.peak.space == SpaceKind::regular ? "regular" : "inverse") << "\""
       << ",\"m\":" << d.peak.m << ",\"n\":" << d.peak.n
       << ",\"slope_or_inv_slope\":" << fmt6(d.line.slope)
       << ",\"intercept_px\":" << fmt6(d.line.intercept)
       << ",\"rho_px\":" << fmt6(rt.rho) << ",\"theta_deg\":" << fmt6(rt.theta_deg)
       << ",\"brightness\":" << fmt6(d.peak.brightness)
       << ",\"verified\":" << (d.verified ? "true" : "false") << ",\"score\":" << fmt6(d.score);
    if (d.extent) {
        os << ",\"endpoints\":[[" << fmt6(d.extent->x0) << "," << fmt6(d.extent->y0) << "],["
           << fmt6(d.extent->x1) << "," << fmt6(d.extent->y1) << "]]"
           << ",\"length_px\":" << fmt6(d.extent->length)
           << ",\"width_px\":" << d.extent->width;
    } else {
        os << ",\"endpoints\":null,\"length_px\":null,\"width_px\":null";
    }
    os << "}";
    return os.str();
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

// "k=0.5,b=10,thickness=1,profile=ridge,amplitude=1" or "invk=0.3,bx=18,..."
struct LineSpec {
    LineModel model;
    double thickness = 1.0;
    LineProfile profile = LineProfile::ridge;
    double amplitude = 1.0;
};

LineSpec parse_line_spec(const std::string& spec) {
    LineSpec ls;
    std::optional<double> k, b, invk, bx;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--lines", "expected key=value: " + tok);
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "k") k = std::stod(val);
        else if (key == "b") b = std::stod(val);
        else if (key == "invk") invk = std::stod(val);
        else if (key == "bx") bx = std::stod(val);
        else if (key == "thickness") ls.thickness = std::stod(val);
        else if (key == "amplitude") ls.amplitude = std::stod(val);
        else if (key == "profile") {
            if (val == "ridge") ls.profile = LineProfile::ridge;
            else if (val == "step") ls.profile = LineProfile::step;
            else throw CLI::ValidationError("--lines", "profile must be ridge or step");
        } else {
            throw CLI::ValidationError("--lines", "unknown key: " + key);
        }
    }
    if (invk && bx) ls.model = LineModel::inverse_form(*invk, *bx);
    else if (k && b) ls.model = LineModel::slope_form(*k, *b);
    else throw CLI::ValidationError("--lines", "need k=..,b=.. or invk=..,bx=..");
    return ls;
}

void parse_size(const std::string& size, int& w, int& h) {
    const auto x = size.find('x');
    if (x == std::string::npos) {
        w = h = std::stoi(size);
    } else {
        w = std::stoi(size.substr(0, x));
        h = std::stoi(size.substr(x + 1));
    }
}

struct MatchStats {
    int tp = 0;
    int fp = 0;
    double mean_drho = 0.0;
    double mean_dtheta = 0.0;
};

MatchStats match_lines(const std::vector<DetectedLine>& lines,
                       const std::vector<LineModel>& truth, double tol_theta = 2.0,
                       double tol_rho = 3.0) {
    MatchStats st;
    double sum_drho = 0.0, sum_dtheta = 0.0;
    int matched = 0;
    for (const auto& t : truth) {
        const RhoTheta rt = line_to_rho_theta(t);
        double best_drho = 0.0, best_dtheta = 0.0;
        bool found = false;
        for (const auto& d : lines) {
            const RhoTheta rd = line_to_rho_theta(d.line);
            double dtheta = std::abs(rt.theta_deg - rd.theta_deg);
            double drho = std::abs(rt.rho - rd.rho);
            if (dtheta > 90.0) {
                dtheta = 180.0 - dtheta;
                drho = std::abs(rt.rho + rd.rho);
            }
            if (dtheta <= tol_theta && drho <= tol_rho &&
                (!found || dtheta + drho < best_dtheta + best_drho)) {
                found = true;
                best_drho = drho;
                best_dtheta = dtheta;
            }
        }
        if (found) {
            ++matched;
            sum_drho += best_drho;
            sum_dtheta += best_dtheta;
        }
    }
    st.tp = matched;
    for (const auto& d : lines) {
        bool ok = false;
        for (const auto& t : truth)
            if (same_geometry(d.line, t, tol_theta, tol_rho)) ok = true;
        st.fp += !ok;
    }
    if (matched > 0) {
        st.mean_drho = sum_drho / matched;
        st.mean_dtheta = sum_dtheta / matched;
    }
    return st;
}

int run_detect(const std::string& input, DetectConfig cfg, const std::string& overlay,
               const std::string& heatmap_base, bool log_heatmap) {
    const GrayImage img = load_image(input);
    const std::vector<DetectedLine> lines = detect_lines(img, cfg);

    if (!overlay.empty())
        write_png_rgb(overlay, img.width, img.height, render_overlay(img, lines));
    if (!heatmap_base.empty()) {
        const FunnelOptions fo{false, cfg.threads};
        ParameterSpace reg = funnel_transform(expand_for_regular(img), fo);
        ParameterSpace inv = inverse_funnel_transform(expand_for_inverse(img), fo);
        write_pgm(heatmap_base + ".regular.pgm", render_heatmap(reg, log_heatmap));
        write_pgm(heatmap_base + ".inverse.pgm", render_heatmap(inv, log_heatmap));
    }

    std::cout << "[";
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) std::cout << ",";
        std::cout << "\n  " << line_record_json(lines[i]);
    }
    std::cout << (lines.empty() ? "]\n" : "\n]\n");
    return 0;
}

int run_synth(const std::string& out, const std::string& size_spec,
              const std::vector<std::string>& line_specs, int star, double star_thickness,
              const std::string& occlude, const std::string& noise, std::uint64_t seed) {
    int w = 256, h = 256;
    parse_size(size_spec, w, h);
    GrayImage img(w, h);
    if (star > 0) {
        Scene s = star_scene(std::min(w, h), star, star_thickness);
        img = s.image;
    }
    for (const auto& spec : line_specs) {
        const LineSpec ls = parse_line_spec(spec);
        add_line_model(img, ls.model, ls.thickness, ls.profile, ls.amplitude);
    }
    if (!occlude.empty()) {
        const std::vector<double> v = parse_list(occlude);
        const double d = v.at(0);
        const double cx = v.size() > 1 ? v[1] : 0.0;
        const double cy = v.size() > 2 ? v[2] : 0.0;
        const double fill = v.size() > 3 ? v[3] : 0.0;
        img = occlude_disk(img, cx, cy, d, fill);
    }
    if (!noise.empty()) {
        const auto colon = noise.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--noise", "expected kind:amount, e.g. gaussian:0.1");
        const std::string kind = noise.substr(0, colon);
        const double amount = std::stod(noise.substr(colon + 1));
        NoiseModel model;
        if (kind == "gaussian") model = NoiseModel::gaussian(amount, seed);
        else if (kind == "salt-pepper") model = NoiseModel::salt_pepper(amount, seed);
        else if (kind == "speckle") model = NoiseModel::speckle(amount, seed);
        else throw CLI::ValidationError("--noise", "kind must be gaussian, salt-pepper or speckle");
        img = apply_noise(img, model);
    }
    write_pgm(out, quantize(img, 255));
    return 0;
}

int run_render(const std::string& input, const std::string& space, const std::string& out,
               bool log_scale, int threads) {
    const GrayImage img = load_image(input);
    const FunnelOptions fo{false, threads};
    ParameterSpace ps = space == "inverse"
                            ? inverse_funnel_transform(expand_for_inverse(img), fo)
                            : funnel_transform(expand_for_regular(img), fo);
    const RawImage heat = render_heatmap(ps, log_scale);
    if (ends_with(out, ".png") || ends_with(out, ".PNG"))
        write_png_gray(out, heat);
    else
        write_pgm(out, heat);
    return 0;
}

int run_experiment(const std::string& kind, const std::string& noise_kind,
                   const std::string& values, const std::string& diameters, int size, int star,
                   const std::string& scene_kind, std::uint64_t seed, DetectConfig cfg,
                   const std::string& out_path) {
    std::ostringstream csv;
    csv << "sweep_value,true_positives,false_positives,mean_localization_error_rho_px,"
           "mean_localization_error_theta_deg,runtime_ms\n";

    auto run_one = [&](double sweep_value, const GrayImage& img,
                       const std::vector<LineModel>& truth) {
        const auto t0 = std::chrono::steady_clock::now();
        const std::vector<DetectedLine> lines = detect_lines(img, cfg);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        const MatchStats st = match_lines(lines, truth);
        csv << fmt6(sweep_value) << "," << st.tp << "," << st.fp << "," << fmt6(st.mean_drho)
            << "," << fmt6(st.mean_dtheta) << "," << fmt6(ms) << "\n";
    };

    if (kind == "noise-sweep") {
        const Scene scene = scene_kind == "step" ? step_scene(size) : star_scene(size, star);
        if (cfg.max_peaks <= 0) cfg.max_peaks = static_cast<int>(scene.truth.size());
        std::uint64_t i = 0;
        for (double v : parse_list(values)) {
            NoiseModel model;
            if (noise_kind == "gaussian") model = NoiseModel::gaussian(v, seed + i);
            else if (noise_kind == "salt-pepper") model = NoiseModel::salt_pepper(v, seed + i);
            else if (noise_kind == "speckle") model = NoiseModel::speckle(v, seed + i);
            else throw CLI::ValidationError("--noise", "unknown noise kind");
            run_one(v, apply_noise(scene.image, model), scene.truth);
            ++i;
        }
    } else if (kind == "occlusion-sweep") {
        const Scene scene = star_scene(size, star);
        if (cfg.max_peaks <= 0) cfg.max_peaks = star;
        for (double d : parse_list(diameters))
            run_one(d, occlude_disk(scene.image, 0.0, 0.0, d, 0.0), scene.truth);
    } else if (kind == "thickness") {
        if (cfg.max_peaks <= 0) cfg.max_peaks = star;
        for (double t : parse_list(values)) {
            const Scene scene = star_scene(size, star, std::max(1.0, t));
            run_one(t, scene.image, scene.truth);
        }
    } else {
        throw CLI::ValidationError("--kind", "must be noise-sweep, occlusion-sweep or thickness");
    }

    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream f(out_path);
        f << csv.str();
        if (!f) throw ImageFormatError(out_path + ": write failed");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Straight line detection in grayscale images via the funnel transform"};
    app.require_subcommand(1);

    DetectConfig cfg;
    std::string input, output, overlay, heatmap_base, space = "regular";
    bool log_scale = false, no_mask = false;
    std::uint64_t seed = 0;

    auto add_detect_flags = [&](CLI::App* cmd) {
        cmd->add_option("--max-lines", cfg.max_peaks, "peak budget per parameter space");
        cmd->add_option("--threshold-ratio", cfg.threshold_ratio,
                        "peak threshold as a fraction of the global maximum");
        cmd->add_option("--neighborhood", cfg.neighborhood, "suppression box size (odd)");
        cmd->add_option("--band-width", cfg.band_width, "verification band width (odd, 3..7)");
        cmd->add_option("--verify-ratio", cfg.verify_ratio, "verification contrast threshold");
        cmd->add_flag("--no-mask-boundaries", no_mask, "keep the padding-boundary peaks");
        cmd->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
    };

    CLI::App* detect = app.add_subcommand("detect", "detect lines; JSON records on stdout");
    detect->add_option("input", input, "grayscale PGM (P5) or PNG image")->required();
    add_detect_flags(detect);
    detect->add_option("--overlay", overlay, "write an RGB overlay PNG");
    detect->add_option("--heatmap", heatmap_base,
                       "write BASE.regular.pgm and BASE.inverse.pgm parameter-space renders");
    detect->add_flag("--log", log_scale, "log-scale the heatmap renders");

    std::string size_spec = "256";
    std::vector<std::string> line_specs;
    int star = 0;
    double star_thickness = 1.0;
    std::string occlude, noise;
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic scene as PGM");
    synth->add_option("-o,--output", output, "output PGM path")->required();
    synth->add_option("--size", size_spec, "image size, N or WxH (default 256)");
    synth->add_option("--lines", line_specs,
                      "line spec k=..,b=..[,thickness=..][,profile=ridge|step][,amplitude=..] "
                      "or invk=..,bx=..; repeatable");
    synth->add_option("--star", star, "draw an n-line star scene");
    synth->add_option("--star-thickness", star_thickness, "star line thickness");
    synth->add_option("--occlude", occlude, "disk occlusion d[,cx,cy,fill]");
    synth->add_option("--noise", noise, "noise kind:amount (gaussian:0.1, salt-pepper:0.3, speckle:0.3)");
    synth->add_option("--seed", seed, "noise seed");

    CLI::App* render = app.add_subcommand("render-space", "render a parameter space heatmap");
    render->add_option("input", input, "grayscale PGM or PNG image")->required();
    render->add_option("--space", space, "regular or inverse")
        ->check(CLI::IsMember({"regular", "inverse"}));
    render->add_option("-o,--output", output, "output PGM or PNG path")->required();
    render->add_flag("--log", log_scale, "apply log(1+x) before normalization");
    render->add_option("--threads", cfg.threads, "worker threads (0 = auto)");

    std::string kind, noise_kind = "gaussian", values = "0", diameters = "1,77,129,286";
    std::string scene_kind = "star";
    int size = 256, star_n = 8;
    CLI::App* experiment = app.add_subcommand("experiment", "benchmark sweeps; CSV output");
    experiment->add_option("--kind", kind, "noise-sweep, occlusion-sweep or thickness")->required();
    experiment->add_option("--noise", noise_kind, "noise kind for noise-sweep");
    experiment->add_option("--values", values, "comma list of sweep values");
    experiment->add_option("--diameters", diameters, "comma list of occlusion diameters");
    experiment->add_option("--size", size, "scene size");
    experiment->add_option("--star", star_n, "number of star lines");
    experiment->add_option("--scene", scene_kind, "noise-sweep scene: star or step")
        ->check(CLI::IsMember({"star", "step"}));
    experiment->add_option("--seed", seed, "noise seed");
    experiment->add_option("-o,--output", output, "CSV path (default stdout)");
    cfg.max_peaks = 0;  // experiment default: one peak budget per scene line
    add_detect_flags(experiment);

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.mask_boundaries = !no_mask;
        if (detect->parsed()) {
            if (cfg.max_peaks <= 0) cfg.max_peaks = 10;
            return run_detect(input, cfg, overlay, heatmap_base, log_scale);
        }
        if (synth->parsed())
            return run_synth(output, size_spec, line_specs, star, star_thickness, occlude, noise,
                             seed);
        if (render->parsed()) return run_render(input, space, output, log_scale, cfg.threads);
        if (experiment->parsed())
            return run_experiment(kind, noise_kind, values, diameters, size, star_n, scene_kind,
                                  seed, cfg, output);
    } catch (const ImageFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

// dmdseg: functional segmentation of dynamic grayscale sequences.
// Subcommands: synth | segment | quantify | eval.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dmdseg/evaluation.hpp"
#include "dmdseg/pgm.hpp"
#include "dmdseg/pipeline.hpp"
#include "dmdseg/synthetic.hpp"

namespace fs = std::filesystem;
using namespace dmdseg;

namespace {

// Every command echoes its resolved configuration into the output
// directory for provenance; reruns with equal config are byte-identical.
void write_run_config(const fs::path& dir, const std::string& text) {
    fs::create_directories(dir);
    std::ofstream out(dir / "run_config");
    if (!out)
        throw IoError("cannot write run_config in " + dir.string());
    out << text;
}

struct SynthArgs {
    std::string out_dir;
    std::uint64_t seed = 42;
    double noise = 0.05;
    int frames = 100;
    std::string size = "64x64";
    double delta_t = 1.0;
    bool simple = false;
};

int run_synth(const SynthArgs& a) {
    int w = 0, h = 0;
    char x = 0;
    std::istringstream ss(a.size);
    if (!(ss >> w >> x >> h) || x != 'x' || !ss.eof())
        throw ValidationError("bad --size, want WxH like 64x64");

    PhantomSpec spec = default_phantom_spec(w, h, a.frames, a.simple);
    spec.seed = a.seed;
    spec.noise_sigma = a.noise;
    spec.delta_t = a.delta_t;
    validate(spec);

    const PhantomOutput phantom = generate(spec);
    write_phantom(a.out_dir, phantom, spec);

    std::ostringstream cfg;
    cfg << "command = synth\n"
        << "out = " << a.out_dir << "\n"
        << "seed = " << a.seed << "\n"
        << "noise_sigma = " << a.noise << "\n"
        << "frames = " << a.frames << "\n"
        << "size = " << a.size << "\n"
        << "delta_t = " << a.delta_t << "\n"
        << "simple = " << (a.simple ? "true" : "false") << "\n"
        << "rng = mt19937_64/box-muller-v1\n";
    write_run_config(a.out_dir, cfg.str());

    std::cout << "phantom written to " << a.out_dir << " (" << spec.frames << " frames, " << w
              << "x" << h << ", noise " << a.noise << ")\n";
    return 0;
}

struct SegmentArgs {
    std::string input;
    std::string out_dir;
    int mode_k = 2;
    double svd_cutoff = 1e-10;
    std::optional<double> delta_t;
    int connectivity = 8;
    int top_k = 1;
    std::string threshold = "otsu";
};

int run_segment(const SegmentArgs& a) {
    PipelineOptions opts;
    opts.mode_k = a.mode_k;
    opts.svd_cutoff = a.svd_cutoff;
    if (a.connectivity != 4 && a.connectivity != 8)
        throw ValidationError("--connectivity must be 4 or 8");
    opts.segmentation.connectivity =
        a.connectivity == 8 ? Connectivity::eight : Connectivity::four;
    opts.segmentation.top_k = a.top_k;
    opts.segmentation.threshold = ThresholdSpec::parse(a.threshold);

    const ImageSequence seq = load_sequence(a.input, a.delta_t);
    const PipelineResult res = run_segmentation_pipeline(seq, opts);

    fs::create_directories(a.out_dir);
    write_normalized_pgm16(fs::path(a.out_dir) / "mode.pgm", res.mode_image);
    write_mask_pgm(fs::path(a.out_dir) / "binarized.pgm", res.binarized);
    write_mask_pgm(fs::path(a.out_dir) / "template.pgm", res.mask);
    write_curve_csv(fs::path(a.out_dir) / "curve.csv", res.curve);
    {
        std::ofstream spec_csv(fs::path(a.out_dir) / "spectrum.csv");
        if (!spec_csv)
            throw IoError("cannot write spectrum.csv in " + a.out_dir);
        write_spectrum_csv(spec_csv, res.dmd, res.ordered);
    }

    std::ostringstream cfg;
    cfg << "command = segment\n"
        << "input = " << a.input << "\n"
        << "out = " << a.out_dir << "\n"
        << "mode = " << a.mode_k << "\n"
        << "svd_cutoff = " << a.svd_cutoff << "\n"
        << "delta_t = " << (a.delta_t ? std::to_string(*a.delta_t) : std::string("from-input")) << "\n"
        << "connectivity = " << a.connectivity << "\n"
        << "top_k_components = " << a.top_k << "\n"
        << "threshold = " << a.threshold << "\n";
    write_run_config(a.out_dir, cfg.str());

    std::cout << "rank " << res.dmd.rank << ", " << res.ordered.entries.size()
              << " ordered modes; mode-" << res.mode_k << " threshold " << res.threshold
              << "; template area " << res.mask.count() << " px; outputs in " << a.out_dir << "\n";
    return 0;
}

struct QuantifyArgs {
    std::string input;
    std::string mask;
    std::string out_dir;
    std::optional<double> delta_t;
};

int run_quantify(const QuantifyArgs& a) {
    const ImageSequence seq = load_sequence(a.input, a.delta_t);
    const BinaryMask mask = read_mask_pgm(a.mask);
    const TimeIntensityCurve curve = apply_template(seq, mask);

    fs::create_directories(a.out_dir);
    write_curve_csv(fs::path(a.out_dir) / "curve.csv", curve);

    std::ostringstream cfg;
    cfg << "command = quantify\n"
        << "input = " << a.input << "\n"
        << "mask = " << a.mask << "\n"
        << "out = " << a.out_dir << "\n";
    write_run_config(a.out_dir, cfg.str());

    std::cout << "curve over " << curve.mask_area << " px written to " << a.out_dir
              << "/curve.csv\n";
    return 0;
}

struct EvalArgs {
    std::string dmd_mask;
    std::vector<std::string> experts;
    std::string truth;
    std::string sequence;
    std::string out_dir;
    std::optional<double> delta_t;
};

int run_eval(const EvalArgs& a) {
    const BinaryMask d = read_mask_pgm(a.dmd_mask);

    std::optional<ImageSequence> seq;
    if (!a.sequence.empty())
        seq = load_sequence(a.sequence, a.delta_t);

    std::ostringstream cfg;
    cfg << "command = eval\n"
        << "dmd = " << a.dmd_mask << "\n";

    if (!a.truth.empty()) {
        // synthetic mode: score directly against one ground-truth mask
        const BinaryMask gt = read_mask_pgm(a.truth);
        const double j = jaccard(d, gt);
        std::cout << std::setprecision(6) << "JSC(dmd, truth) = " << j << "\n";
        std::optional<double> m;
        if (seq) {
            m = mse(normalize_curve(apply_template(*seq, d)),
                    normalize_curve(apply_template(*seq, gt)));
            std::cout << "MSE(dmd curve, truth curve) = " << *m << "\n";
        }
        if (!a.out_dir.empty()) {
            fs::create_directories(a.out_dir);
            std::ofstream csv(fs::path(a.out_dir) / "report.csv");
            csv << "JSC,MSE\n" << std::setprecision(17) << j << ',';
            if (m)
                csv << *m;
            else
                csv << "nan";
            csv << '\n';
            cfg << "truth = " << a.truth << "\n";
            write_run_config(a.out_dir, cfg.str());
        }
        return 0;
    }

    if (a.experts.size() != 3)
        throw ValidationError("eval needs exactly three --experts masks (or --truth)");
    const BinaryMask e1 = read_mask_pgm(a.experts[0]);
    const BinaryMask e2 = read_mask_pgm(a.experts[1]);
    const BinaryMask e3 = read_mask_pgm(a.experts[2]);

    const EvaluationReport report = evaluate(d, e1, e2, e3, seq ? &*seq : nullptr);
    write_report_table(std::cout, report);

    if (!a.out_dir.empty()) {
        fs::create_directories(a.out_dir);
        std::ofstream csv(fs::path(a.out_dir) / "report.csv");
        if (!csv)
            throw IoError("cannot write report.csv in " + a.out_dir);
        write_report_csv(csv, report);
        for (const auto& e : a.experts)
            cfg << "expert = " << e << "\n";
        if (!a.sequence.empty())
            cfg << "sequence = " << a.sequence << "\n";
        write_run_config(a.out_dir, cfg.str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DMD-based functional segmentation of dynamic image sequences"};
    app.require_subcommand(1);

    SynthArgs synth;
    auto* csynth = app.add_subcommand("synth", "generate a synthetic phantom sequence");
    csynth->add_option("--out", synth.out_dir, "output directory")->required();
    csynth->add_option("--seed", synth.seed, "RNG seed");
    csynth->add_option("--noise", synth.noise, "noise sigma (0 disables)");
    csynth->add_option("--frames", synth.frames, "frame count (>= 10)");
    csynth->add_option("--size", synth.size, "frame size WxH");
    csynth->add_option("--delta-t", synth.delta_t, "frame lag in seconds");
    csynth->add_flag("--simple", synth.simple, "single kidney ellipse instead of a mirrored pair");

    SegmentArgs seg;
    auto* cseg = app.add_subcommand("segment", "run the full segmentation pipeline");
    cseg->add_option("input", seg.input, "sequence directory or manifest")->required();
    cseg->add_option("--out", seg.out_dir, "output directory")->required();
    cseg->add_option("--mode", seg.mode_k, "1-based ordered mode index");
    cseg->add_option("--svd-cutoff", seg.svd_cutoff, "relative singular value cutoff");
    double seg_dt = 0.0;
    auto* seg_dt_opt = cseg->add_option("--delta-t", seg_dt, "override frame lag (seconds)");
    cseg->add_option("--connectivity", seg.connectivity, "4 or 8");
    cseg->add_option("--top-k-components", seg.top_k, "union of the k largest components");
    cseg->add_option("--threshold", seg.threshold, "otsu or fixed:<v>");

    QuantifyArgs quant;
    auto* cquant = app.add_subcommand("quantify", "project a mask onto a sequence");
    cquant->add_option("input", quant.input, "sequence directory or manifest")->required();
    cquant->add_option("--mask", quant.mask, "template mask PGM")->required();
    cquant->add_option("--out", quant.out_dir, "output directory")->required();
    double quant_dt = 0.0;
    auto* quant_dt_opt = cquant->add_option("--delta-t", quant_dt, "override frame lag (seconds)");

    EvalArgs ev;
    auto* ceval = app.add_subcommand("eval", "score a segmentation");
    ceval->add_option("--dmd", ev.dmd_mask, "DMD template mask PGM")->required();
    ceval->add_option("--experts", ev.experts, "three expert mask PGMs")->expected(3);
    ceval->add_option("--truth", ev.truth, "single ground-truth mask (synthetic mode)");
    ceval->add_option("--sequence", ev.sequence, "sequence for curve MSE columns");
    ceval->add_option("--out", ev.out_dir, "output directory for report.csv");
    double eval_dt = 0.0;
    auto* eval_dt_opt = ceval->add_option("--delta-t", eval_dt, "override frame lag (seconds)");

    CLI11_PARSE(app, argc, argv);

    if (*seg_dt_opt)
        seg.delta_t = seg_dt;
    if (*quant_dt_opt)
        quant.delta_t = quant_dt;
    if (*eval_dt_opt)
        ev.delta_t = eval_dt;

    try {
        if (csynth->parsed())
            return run_synth(synth);
        if (cseg->parsed())
            return run_segment(seg);
        if (cquant->parsed())
            return run_quantify(quant);
        if (ceval->parsed())
            return run_eval(ev);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

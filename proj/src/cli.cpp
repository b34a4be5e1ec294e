#include "fragmark/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fragmark/attack.hpp"
#include "fragmark/error.hpp"
#include "fragmark/image_io.hpp"
#include "fragmark/keyfile.hpp"
#include "fragmark/metrics.hpp"

namespace fragmark {

namespace {

struct EmbedArgs {
    std::string cover, tag, key_phrase, out, record;
    bool to_gray = false;
};

struct ExtractArgs {
    std::string image, record, out;
};

struct VerifyArgs {
    std::string image, record, reference, report;
};

struct AttackArgs {
    std::string image, kind, out;
    double density = 0.05;
    double sigma = 2.0;
    std::vector<std::size_t> rect;
    int fill = 0;
    std::size_t count = 1;
    std::uint64_t seed = 0;
};

struct MetricsArgs {
    std::string a, b;
};

std::string format_db(double db) {
    if (std::isinf(db)) return "inf";
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << db;
    return s.str();
}

int run_embed(const EmbedArgs& a, std::ostream& out) {
    const ReadOptions opts{a.to_gray};
    const GrayImage cover = read_image(a.cover, opts);
    const GrayImage tag = read_image(a.tag, opts);
    const Embedding result = embed(cover, tag, a.key_phrase);
    write_image(result.watermarked, a.out);
    write_key(result.record, a.record);
    out << "embedded " << result.record.positions.size() << " nibbles\n";
    out << "psnr_db: " << format_db(psnr(cover, result.watermarked)) << "\n";
    return kExitAuthentic;
}

int run_extract(const ExtractArgs& a, std::ostream& out) {
    const GrayImage image = read_image(a.image);
    const PositionRecord record = read_key(a.record);
    const Extraction ex = extract(image, record);
    write_image(ex.tag, a.out);
    out << "extracted " << record.tag.rows << "x" << record.tag.cols << " tag\n";
    return kExitAuthentic;
}

int run_verify(const VerifyArgs& a, std::ostream& out) {
    const GrayImage image = read_image(a.image);
    const PositionRecord record = read_key(a.record);

    VerifyReport report;
    std::optional<double> tag_psnr;
    if (!a.reference.empty()) {
        const GrayImage reference_tag = read_image(a.reference);
        const NibblePlane reference = prepare_tag(reference_tag);
        report = verify(image, record, reference);
        // Compare the reconstruction against the reference quantized the same way.
        GrayImage quantized = reference_tag;
        for (std::uint8_t& p : quantized.data()) p &= 0xF0;
        tag_psnr = psnr(quantized, extract(image, record).tag);
    } else {
        report = verify(image, record);
    }

    const nlohmann::json doc = report_to_json(report, tag_psnr ? &*tag_psnr : nullptr);
    if (!a.report.empty()) {
        std::ofstream f(a.report, std::ios::trunc);
        if (!f) throw Error(ErrorCode::Io, "cannot open " + a.report + " for writing");
        f << doc.dump(2) << "\n";
        if (!f) throw Error(ErrorCode::Io, "failed writing " + a.report);
    }
    out << (report.authentic ? "authentic" : "tampered");
    if (!report.authentic && report.ber) {
        out << " (" << report.tampered_positions.size() << " nibbles differ, ber "
            << *report.ber << ")";
    }
    out << "\n";
    return report.authentic ? kExitAuthentic : kExitTampered;
}

int run_attack(const AttackArgs& a, std::ostream& out) {
    const GrayImage image = read_image(a.image);
    AttackSpec spec;
    switch (parse_attack_kind(a.kind)) {
        case AttackKind::SaltPepper: spec = AttackSpec::salt_pepper(a.density, a.seed); break;
        case AttackKind::AdditiveNoise: spec = AttackSpec::additive_noise(a.sigma, a.seed); break;
        case AttackKind::RegionOverwrite:
            if (a.rect.size() != 4) {
                throw Error(ErrorCode::InvalidAttack, "invalid attack: --rect needs row,col,height,width");
            }
            if (a.fill < 0 || a.fill > 255) {
                throw Error(ErrorCode::InvalidAttack, "invalid attack: --fill must be in [0, 255]");
            }
            spec = AttackSpec::region_overwrite({a.rect[0], a.rect[1], a.rect[2], a.rect[3]},
                                                static_cast<std::uint8_t>(a.fill));
            break;
        case AttackKind::BitFlip: spec = AttackSpec::bit_flip(a.count, a.seed); break;
    }
    const GrayImage attacked = apply_attack(image, spec);
    write_image(attacked, a.out);
    out << to_string(spec.kind) << ": psnr_db " << format_db(psnr(image, attacked)) << "\n";
    return kExitAuthentic;
}

int run_metrics(const MetricsArgs& a, std::ostream& out) {
    const GrayImage lhs = read_image(a.a);
    const GrayImage rhs = read_image(a.b);
    out << "psnr_db: " << format_db(psnr(lhs, rhs)) << "\n";
    out << "ber: " << ber(prepare_tag(lhs), prepare_tag(rhs)) << "\n";
    return kExitAuthentic;
}

}  // namespace

nlohmann::json report_to_json(const VerifyReport& report, const double* psnr_db) {
    nlohmann::json doc;
    doc["authentic"] = report.authentic;
    doc["ber"] = report.ber ? nlohmann::json(*report.ber) : nlohmann::json(nullptr);
    doc["tampered"] = nlohmann::json::array();
    for (const TamperedPosition& t : report.tampered_positions) {
        doc["tampered"].push_back({{"tag_row", t.tag_row},
                                   {"tag_col", t.tag_col},
                                   {"cover_row", t.cover_row},
                                   {"cover_col", t.cover_col}});
    }
    if (psnr_db) {
        // JSON has no infinity; identical tags report null.
        doc["psnr"] = std::isinf(*psnr_db) ? nlohmann::json(nullptr) : nlohmann::json(*psnr_db);
    }
    return doc;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fragile watermark embedding, extraction and tamper verification", "fragmark"};
    app.require_subcommand(1);

    EmbedArgs ea;
    auto* embed_cmd = app.add_subcommand("embed", "Embed a tag into a cover image");
    embed_cmd->add_option("--cover", ea.cover, "Cover image (PGM or PNG)")->required();
    embed_cmd->add_option("--tag", ea.tag, "Tag image (PGM or PNG)")->required();
    embed_cmd->add_option("--key-phrase", ea.key_phrase, "Passphrase seeding position selection")
        ->required();
    embed_cmd->add_option("--out", ea.out, "Watermarked output (PGM)")->required();
    embed_cmd->add_option("--record", ea.record, "Position-record key file to write")->required();
    embed_cmd->add_flag("--to-gray", ea.to_gray, "Convert colour inputs with BT.601 luma");

    ExtractArgs xa;
    auto* extract_cmd = app.add_subcommand("extract", "Recover the embedded tag");
    extract_cmd->add_option("--image", xa.image, "Watermarked image")->required();
    extract_cmd->add_option("--record", xa.record, "Position-record key file")->required();
    extract_cmd->add_option("--out", xa.out, "Reconstructed tag (PGM)")->required();

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "Check integrity; exit 0 authentic, 2 tampered");
    verify_cmd->add_option("--image", va.image, "Watermarked image")->required();
    verify_cmd->add_option("--record", va.record, "Position-record key file")->required();
    verify_cmd->add_option("--reference", va.reference, "Original tag image for localization");
    verify_cmd->add_option("--report", va.report, "JSON report path")->required();

    AttackArgs aa;
    auto* attack_cmd = app.add_subcommand("attack", "Apply a seeded attack to an image");
    attack_cmd->add_option("--image", aa.image, "Input image")->required();
    attack_cmd->add_option("--kind", aa.kind, "salt_pepper | additive_noise | region_overwrite | bit_flip")
        ->required();
    attack_cmd->add_option("--out", aa.out, "Attacked output (PGM)")->required();
    attack_cmd->add_option("--density", aa.density, "salt_pepper probability per pixel")
        ->capture_default_str();
    attack_cmd->add_option("--sigma", aa.sigma, "additive_noise standard deviation")
        ->capture_default_str();
    attack_cmd->add_option("--rect", aa.rect, "region_overwrite row,col,height,width")->delimiter(',');
    attack_cmd->add_option("--fill", aa.fill, "region_overwrite fill value")->capture_default_str();
    attack_cmd->add_option("--count", aa.count, "bit_flip pixel count")->capture_default_str();
    attack_cmd->add_option("--seed", aa.seed, "RNG seed")->capture_default_str();

    MetricsArgs ma;
    auto* metrics_cmd = app.add_subcommand("metrics", "PSNR and high-nibble BER between two images");
    metrics_cmd->add_option("--a", ma.a, "First image")->required();
    metrics_cmd->add_option("--b", ma.b, "Second image")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "fragmark: " << e.what() << "\n";
        return kExitError;
    }

    try {
        if (embed_cmd->parsed()) return run_embed(ea, out);
        if (extract_cmd->parsed()) return run_extract(xa, out);
        if (verify_cmd->parsed()) return run_verify(va, out);
        if (attack_cmd->parsed()) return run_attack(aa, out);
        if (metrics_cmd->parsed()) return run_metrics(ma, out);
    } catch (const Error& e) {
        err << "fragmark: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "fragmark: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

}  // namespace fragmark

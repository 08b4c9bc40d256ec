// Command-line front end for the defect-chain pipeline.
//
// Configuration precedence: built-in defaults < --config JSON file < flags.
// All JSON artifacts are byte-deterministic for a fixed configuration and
// carry a provenance block (tool version + config hash); report.json also
// records wall times, which naturally vary between runs.

#include <defectchain/criteria.hpp>
#include <defectchain/json_io.hpp>
#include <defectchain/matrix_market.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

namespace dc = defectchain;
using nlohmann::json;

namespace {

struct PipelineConfig {
    std::string category = "derived";  // builtin name, file path, or the derived table
    std::string bimodule = "F1";
    int kappa = 1;
    std::vector<std::size_t> sizes = {1, 2, 3, 4, 5, 6, 7, 8};
    std::string boundary = "*,*";
    double tolerance = 1e-10;
    std::string output_dir = ".";
};

json config_to_json(const PipelineConfig& cfg) {
    return json{{"category", cfg.category},   {"bimodule", cfg.bimodule},
                {"kappa", cfg.kappa},         {"sizes", cfg.sizes},
                {"boundary", cfg.boundary},   {"tolerance", cfg.tolerance},
                {"output_dir", cfg.output_dir}};
}

void apply_config_file(PipelineConfig& cfg, const std::string& path) {
    json j = dc::read_json_file(path);
    if (!j.is_object())
        throw std::runtime_error("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "category")
            cfg.category = value.get<std::string>();
        else if (key == "bimodule")
            cfg.bimodule = value.get<std::string>();
        else if (key == "kappa")
            cfg.kappa = value.get<int>();
        else if (key == "sizes")
            cfg.sizes = value.get<std::vector<std::size_t>>();
        else if (key == "boundary")
            cfg.boundary = value.get<std::string>();
        else if (key == "tolerance")
            cfg.tolerance = value.get<double>();
        else if (key == "output_dir")
            cfg.output_dir = value.get<std::string>();
        else
            throw std::runtime_error("unknown config key '" + key + "'");
    }
}

void validate_config(const PipelineConfig& cfg) {
    if (cfg.kappa != 1 && cfg.kappa != -1)
        throw std::runtime_error("kappa must be +1 or -1");
    if (cfg.tolerance <= 0.0)
        throw std::runtime_error("tolerance must be positive");
    for (std::size_t k : cfg.sizes)
        if (k < 1)
            throw std::runtime_error("sizes must be positive qubit counts");
}

dc::Boundary parse_boundary(const std::string& text) {
    if (text == "free")
        return dc::Boundary::free_ends();
    if (text == "periodic")
        return dc::Boundary::periodic();
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::runtime_error("boundary must be 'free', 'periodic', or 'left,right'");
    return dc::Boundary::fixed(text.substr(0, comma), text.substr(comma + 1));
}

std::string sector_slug(const dc::Boundary& b) {
    std::string text = dc::boundary_text(b);
    if (b.kind != dc::Boundary::Kind::fixed)
        return text;
    std::string slug = "fixed-";
    for (char c : text)
        slug += c == '*' ? 's' : c;
    std::replace(slug.begin(), slug.end(), ',', '-');
    return slug;
}

dc::FusionCategory builtin_category(const std::string& name) {
    if (name == "ising+")
        return dc::ising(1);
    if (name == "ising-")
        return dc::ising(-1);
    if (name.rfind("vecz", 0) == 0) {
        unsigned p = static_cast<unsigned>(std::stoul(name.substr(4)));
        return dc::vec_zp(p, static_cast<unsigned>(std::lcm(8u, p)));
    }
    throw std::runtime_error("unknown builtin category '" + name + "'");
}

dc::FusionCategory resolve_category(const PipelineConfig& cfg) {
    if (cfg.category == "derived")
        return dc::derive_extended_fsymbols(dc::vec_zp(2), dc::catalog_bimodule(2, cfg.bimodule),
                                            cfg.kappa);
    if (cfg.category == "ising+" || cfg.category == "ising-" || cfg.category.rfind("vecz", 0) == 0)
        return builtin_category(cfg.category);
    return dc::category_from_json(dc::read_json_file(cfg.category));
}

std::string config_hash_text(const PipelineConfig& cfg) {
    return dc::json_text(config_to_json(cfg));
}

json provenance(const PipelineConfig& cfg) { return dc::provenance_block(config_hash_text(cfg)); }

std::string basis_sidecar_path(const std::string& matrix_path) {
    const std::string suffix = ".mtx";
    if (matrix_path.size() > suffix.size() &&
        matrix_path.compare(matrix_path.size() - suffix.size(), suffix.size(), suffix) == 0)
        return matrix_path.substr(0, matrix_path.size() - suffix.size()) + ".basis.json";
    return matrix_path + ".basis.json";
}

void write_hamiltonian_files(const PipelineConfig& cfg, const dc::ChainOperator& H,
                             const std::string& matrix_path) {
    dc::write_matrix_market(matrix_path, H);
    json sidecar = dc::basis_to_json(H.basis);
    sidecar["terms"] = {{"identity", H.terms.identity},
                        {"coupling", H.terms.coupling},
                        {"transverse", H.terms.transverse},
                        {"uniform", H.terms.uniform}};
    sidecar["provenance"] = provenance(cfg);
    dc::write_json_file(basis_sidecar_path(matrix_path), sidecar);
}

int cmd_pentagon_check(const PipelineConfig& cfg) {
    dc::FusionCategory C = resolve_category(cfg);
    try {
        C.validate();
    } catch (const std::exception& e) {
        std::printf("FAIL  table is not structurally valid: %s\n", e.what());
        return 1;
    }
    auto report = dc::check_pentagon(C);
    std::printf("%s  %zu labels, %zu instances, %zu violations\n", report.ok() ? "PASS" : "FAIL",
                C.size(), report.instances_checked, report.violations.size());
    return report.ok() ? 0 : 1;
}

int cmd_bimodule_check(unsigned p, const std::string& name) {
    std::vector<std::string> names =
        name.empty() ? dc::catalog_names(p) : std::vector<std::string>{name};
    bool all_ok = true;
    for (const auto& n : names) {
        auto report = dc::check_bimodule(dc::catalog_bimodule(p, n));
        std::printf("%s  %-4s p=%u  %zu identities, %zu violations\n",
                    report.ok() ? "PASS" : "FAIL", n.c_str(), p, report.identities_checked,
                    report.violations.size());
        all_ok = all_ok && report.ok();
    }
    return all_ok ? 0 : 1;
}

int cmd_tube_idempotents(const PipelineConfig& cfg, unsigned p, const std::string& twist,
                         const std::string& out) {
    dc::AnnularContext ctx =
        dc::make_annular_context(dc::catalog_bimodule(p, cfg.bimodule),
                                 dc::catalog_bimodule(p, cfg.bimodule),
                                 dc::catalog_bimodule(p, twist));
    const dc::ObjectTriple source{0, 0, 0};
    dc::IdempotentSet ids = dc::primitive_idempotents(ctx, source);
    dc::check_algebra(ids.algebra);

    json doc;
    doc["dimension"] = ids.algebra.basis.size();
    doc["commutative"] = true;  // check_algebra would have thrown otherwise
    json basis = json::array();
    for (const auto& key : ids.algebra.basis)
        basis.push_back({{"west", key.x}, {"south", key.y}, {"east", key.z}});
    doc["basis"] = basis;
    json idems = json::array();
    for (const auto& vec : ids.idempotents) {
        json coeffs = json::array();
        for (const auto& c : vec)
            coeffs.push_back(dc::scalar_to_json(c));
        idems.push_back(coeffs);
    }
    doc["idempotents"] = idems;
    doc["provenance"] = provenance(cfg);
    if (out.empty())
        std::printf("%s", dc::json_text(doc).c_str());
    else
        dc::write_json_file(out, doc);
    std::printf("PASS  %zu-dimensional commutative algebra, %zu primitive idempotents\n",
                ids.algebra.basis.size(), ids.idempotents.size());
    return 0;
}

int cmd_derive_fsymbols(const PipelineConfig& cfg, const std::string& out) {
    dc::FusionCategory derived = dc::derive_extended_fsymbols(
        dc::vec_zp(2), dc::catalog_bimodule(2, cfg.bimodule), cfg.kappa);
    json doc = dc::category_to_json(derived);
    doc["provenance"] = provenance(cfg);
    if (!out.empty())
        dc::write_json_file(out, doc);
    std::printf("PASS  derived %zu F-symbol entries at kappa=%+d%s%s\n", derived.fsymbols.size(),
                cfg.kappa, out.empty() ? "" : " -> ", out.c_str());
    return 0;
}

int cmd_build_hamiltonian(const PipelineConfig& cfg, const std::string& model, std::size_t edges,
                          const std::string& out) {
    if (model != "defect-z2")
        throw std::runtime_error("unknown model '" + model + "' (expected defect-z2)");
    dc::ChainOperator H =
        dc::defect_chain_hamiltonian(edges, parse_boundary(cfg.boundary), cfg.kappa);
    write_hamiltonian_files(cfg, H, out);
    std::printf("PASS  %zu edges, boundary %s, dimension %zu -> %s (+ %s)\n", edges,
                dc::boundary_text(H.basis.boundary).c_str(), H.dimension(), out.c_str(),
                basis_sidecar_path(out).c_str());
    return 0;
}

int cmd_spectrum(const PipelineConfig& cfg, const std::string& input, bool lanczos, std::size_t k,
                 const std::string& out) {
    dc::SparseMatrix M = dc::read_matrix_market(input);
    dc::DiagonalizeMode mode =
        lanczos ? dc::DiagonalizeMode::lanczos_lowk(k) : dc::DiagonalizeMode::dense_full();
    dc::Spectrum spec = dc::diagonalize(M.dim, M.entries, mode);
    spec.source["input"] = input;
    spec.source["dimension"] = std::to_string(M.dim);
    spec.source["mode"] = lanczos ? "lanczos-" + std::to_string(k) : "dense";
    json doc = dc::spectrum_to_json(spec);
    doc["provenance"] = provenance(cfg);
    if (out.empty())
        std::printf("%s", dc::json_text(doc).c_str());
    else
        dc::write_json_file(out, doc);
    std::printf("PASS  %zu eigenvalues (%s)%s%s\n", spec.eigenvalues.size(),
                spec.source["mode"].c_str(), out.empty() ? "" : " -> ", out.c_str());
    return 0;
}

int cmd_compare_tfim(const PipelineConfig& cfg, std::size_t edges) {
    if (edges < 3 || edges % 2 == 0)
        throw std::runtime_error("comparison needs an odd edge count of at least 3");
    const std::size_t qubits = (edges - 1) / 2;
    dc::Spectrum defect = dc::diagonalize(
        dc::defect_chain_hamiltonian(edges, dc::Boundary::fixed("*", "*"), cfg.kappa));
    dc::Spectrum reference = dc::diagonalize(dc::tfim_reference(qubits));
    auto report = dc::compare_spectra(defect, reference, cfg.tolerance);
    std::printf("%s  %zu edges vs %zu-qubit reference: max deviation %.3e, %zu unmatched\n",
                report.equal ? "PASS" : "FAIL", edges, qubits, report.max_deviation,
                report.unmatched);
    return report.equal ? 0 : 1;
}

int cmd_reproduce(const PipelineConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);
    const std::string dir = cfg.output_dir + "/";
    json report;
    report["config"] = config_to_json(cfg);
    report["provenance"] = provenance(cfg);
    json stages = json::object();
    bool stages_ok = true;
    auto write_report = [&](bool all_pass) {
        report["stages"] = stages;
        report["all_pass"] = all_pass;
        dc::write_json_file(dir + "report.json", report);
    };

    // stage 1: derive the extended table and write it out
    try {
        dc::FusionCategory derived = dc::derive_extended_fsymbols(
            dc::vec_zp(2), dc::catalog_bimodule(2, cfg.bimodule), cfg.kappa);
        json doc = dc::category_to_json(derived);
        doc["provenance"] = provenance(cfg);
        dc::write_json_file(dir + "fsymbols.json", doc);
        stages["derive"] = {{"pass", true}, {"entries", derived.fsymbols.size()},
                            {"output", "fsymbols.json"}};
        std::printf("stage derive-fsymbols: PASS (%zu entries)\n", derived.fsymbols.size());
    } catch (const std::exception& e) {
        stages["derive"] = {{"pass", false}, {"error", e.what()}};
        std::printf("stage derive-fsymbols: FAIL (%s)\n", e.what());
        stages_ok = false;
    }

    // stage 2: pentagon check on the configured table (the derived one by default)
    if (stages_ok)
        try {
            dc::FusionCategory C = resolve_category(cfg);
            C.validate();
            auto pent = dc::check_pentagon(C);
            stages["pentagon"] = {{"pass", pent.ok()},
                                  {"instances", pent.instances_checked},
                                  {"violations", pent.violations.size()}};
            std::printf("stage pentagon-check: %s (%zu instances, %zu violations)\n",
                        pent.ok() ? "PASS" : "FAIL", pent.instances_checked,
                        pent.violations.size());
            stages_ok = stages_ok && pent.ok();
        } catch (const std::exception& e) {
            stages["pentagon"] = {{"pass", false}, {"error", e.what()}};
            std::printf("stage pentagon-check: FAIL (%s)\n", e.what());
            stages_ok = false;
        }

    // stage 3: assemble and write the chain operators for every size/sector
    if (stages_ok) {
        json built = json::array();
        try {
            for (std::size_t k : cfg.sizes) {
                const std::size_t edges = 2 * k + 1;
                for (const dc::Boundary& sector :
                     {dc::Boundary::fixed("*", "*"), dc::Boundary::free_ends()}) {
                    dc::ChainOperator H = dc::defect_chain_hamiltonian(edges, sector, cfg.kappa);
                    std::string file = "hamiltonian_e" + std::to_string(edges) + "_" +
                                       sector_slug(sector) + ".mtx";
                    write_hamiltonian_files(cfg, H, dir + file);
                    built.push_back({{"edges", edges},
                                     {"boundary", dc::boundary_text(sector)},
                                     {"dimension", H.dimension()},
                                     {"identity_terms", H.terms.identity},
                                     {"coupling_terms", H.terms.coupling},
                                     {"transverse_terms", H.terms.transverse},
                                     {"file", file}});
                }
            }
            stages["hamiltonians"] = {{"pass", true}, {"built", built}};
            std::printf("stage build-hamiltonian: PASS (%zu operators)\n", built.size());
        } catch (const std::exception& e) {
            stages["hamiltonians"] = {{"pass", false}, {"error", e.what()}, {"built", built}};
            std::printf("stage build-hamiltonian: FAIL (%s)\n", e.what());
            stages_ok = false;
        }
    }

    // stage 4: spectral comparison against the reference chain
    if (stages_ok) {
        json compared = json::array();
        bool all_equal = true;
        try {
            for (std::size_t k : cfg.sizes) {
                const std::size_t edges = 2 * k + 1;
                dc::Spectrum defect = dc::diagonalize(
                    dc::defect_chain_hamiltonian(edges, dc::Boundary::fixed("*", "*"), cfg.kappa));
                dc::Spectrum reference = dc::diagonalize(dc::tfim_reference(k));
                auto cmp = dc::compare_spectra(defect, reference, cfg.tolerance);
                compared.push_back({{"edges", edges},
                                    {"equal", cmp.equal},
                                    {"max_deviation", cmp.max_deviation}});
                all_equal = all_equal && cmp.equal;
            }
            stages["compare"] = {{"pass", all_equal}, {"results", compared}};
            std::printf("stage compare-tfim: %s (%zu sizes)\n", all_equal ? "PASS" : "FAIL",
                        compared.size());
            stages_ok = stages_ok && all_equal;
        } catch (const std::exception& e) {
            stages["compare"] = {{"pass", false}, {"error", e.what()}, {"results", compared}};
            std::printf("stage compare-tfim: FAIL (%s)\n", e.what());
            stages_ok = false;
        }
    }

    if (!stages_ok) {  // partial report retained on stage failure
        write_report(false);
        std::printf("reproduce: FAIL (stage failure; partial report in %sreport.json)\n",
                    dir.c_str());
        return 1;
    }

    // final stage: the full acceptance battery
    auto results = dc::run_all_criteria();
    json criteria = json::array();
    bool all_pass = true;
    for (const auto& r : results) {
        std::printf("%s  %d  %-45s  %7.3fs  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.seconds, r.detail.c_str());
        criteria.push_back({{"id", r.id},
                            {"name", r.name},
                            {"pass", r.pass},
                            {"seconds", r.seconds},
                            {"budget_seconds", r.budget},
                            {"detail", r.detail}});
        all_pass = all_pass && r.pass;
    }
    report["criteria"] = criteria;
    write_report(all_pass);
    std::printf("reproduce: %s (report in %sreport.json)\n", all_pass ? "PASS" : "FAIL",
                dir.c_str());
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact fusion-category defect-chain pipeline"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON configuration file");

    PipelineConfig cfg;
    std::string category_flag, bimodule_flag, boundary_flag, outdir_flag;
    int kappa_flag = 0;  // 0 = not given (only +1/-1 parse)
    double tol_flag = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::size_t> sizes_flag;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--category", category_flag,
                        "category table: 'derived', a builtin (veczP, ising+, ising-), or a file");
        sub->add_option("--bimodule", bimodule_flag, "defect bimodule catalog name");
        sub->add_option("--kappa", kappa_flag, "sign choice, +1 or -1")
            ->check(CLI::IsMember({-1, 1}));
        sub->add_option("--boundary", boundary_flag, "'left,right', 'free', or 'periodic'");
        sub->add_option("--tol", tol_flag, "spectral comparison tolerance");
        sub->add_option("--sizes", sizes_flag, "qubit counts for the spectral stages")
            ->delimiter(',');
        sub->add_option("--out-dir", outdir_flag, "artifact output directory");
    };

    auto* pentagon = app.add_subcommand("pentagon-check", "validate a table and its pentagon");
    add_common(pentagon);

    auto* bimodule = app.add_subcommand("bimodule-check", "check catalog bimodule coherence");
    unsigned bim_p = 2;
    std::string bim_name;
    bimodule->add_option("--p", bim_p, "group order");
    bimodule->add_option("--name", bim_name, "catalog entry (default: all)");

    auto* tube = app.add_subcommand("tube-idempotents",
                                    "primitive idempotents of the defect-pair annular algebra");
    add_common(tube);
    unsigned tube_p = 2;
    std::string tube_twist = "X1", tube_out;
    tube->add_option("--p", tube_p, "group order");
    tube->add_option("--twist", tube_twist, "south-strand catalog module");
    tube->add_option("--out", tube_out, "write the JSON document here instead of stdout");

    auto* derive = app.add_subcommand("derive-fsymbols", "derive the extended F-symbol table");
    add_common(derive);
    std::string derive_out;
    derive->add_option("--out", derive_out, "output JSON path");

    auto* build = app.add_subcommand("build-hamiltonian", "assemble a chain operator");
    add_common(build);
    std::string build_model = "defect-z2", build_out = "H.mtx";
    std::size_t build_edges = 0;
    build->add_option("--model", build_model, "operator family (defect-z2)");
    build->add_option("--edges", build_edges, "number of chain edges")->required();
    build->add_option("--out", build_out, "Matrix Market output path");

    auto* spectrum = app.add_subcommand("spectrum", "diagonalize a stored operator");
    add_common(spectrum);
    std::string spec_input, spec_out;
    bool spec_dense = false;
    std::size_t spec_lanczos = 0;
    spectrum->add_option("matrix", spec_input, "Matrix Market input file")->required();
    spectrum->add_flag("--dense", spec_dense, "full dense spectrum (default)");
    spectrum->add_option("--lanczos", spec_lanczos, "lowest-k iterative spectrum");
    spectrum->add_option("--out", spec_out, "spectrum JSON output path");

    auto* compare = app.add_subcommand("compare-tfim",
                                       "compare a defect chain against the reference chain");
    add_common(compare);
    std::size_t compare_edges = 0;
    compare->add_option("--edges", compare_edges, "number of chain edges (odd)")->required();

    auto* reproduce = app.add_subcommand("reproduce", "run the whole pipeline and battery");
    add_common(reproduce);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty())
            apply_config_file(cfg, config_path);
        if (!category_flag.empty())
            cfg.category = category_flag;
        if (!bimodule_flag.empty())
            cfg.bimodule = bimodule_flag;
        if (kappa_flag != 0)
            cfg.kappa = kappa_flag;
        if (!boundary_flag.empty())
            cfg.boundary = boundary_flag;
        if (!std::isnan(tol_flag))
            cfg.tolerance = tol_flag;
        if (!sizes_flag.empty())
            cfg.sizes = sizes_flag;
        if (!outdir_flag.empty())
            cfg.output_dir = outdir_flag;
        validate_config(cfg);

        if (pentagon->parsed())
            return cmd_pentagon_check(cfg);
        if (bimodule->parsed())
            return cmd_bimodule_check(bim_p, bim_name);
        if (tube->parsed())
            return cmd_tube_idempotents(cfg, tube_p, tube_twist, tube_out);
        if (derive->parsed())
            return cmd_derive_fsymbols(cfg, derive_out);
        if (build->parsed())
            return cmd_build_hamiltonian(cfg, build_model, build_edges, build_out);
        if (spectrum->parsed())
            return cmd_spectrum(cfg, spec_input, spec_lanczos > 0, spec_lanczos, spec_out);
        if (compare->parsed())
            return cmd_compare_tfim(cfg, compare_edges);
        if (reproduce->parsed())
            return cmd_reproduce(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

// Batch front end: ingest bundles, list and print speeches, recompute with
// new thresholds, or serve the JSON API.
#include <CLI11.hpp>

#include <csignal>
#include <filesystem>
#include <iostream>

#include "laughtrack/error.hpp"
#include "laughtrack/http_server.hpp"
#include "laughtrack/lexicon.hpp"
#include "laughtrack/pipeline.hpp"
#include "laughtrack/render.hpp"
#include "laughtrack/service.hpp"

namespace fs = std::filesystem;
using namespace laughtrack;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;

HttpServer* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}

std::string slurp(const fs::path& p) { return lexicon::read_file(p); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"laughtrack: humor delivery analysis for speech transcripts"};
    app.require_subcommand(1);

    std::string store_dir = "store";
    std::string data_dir = LAUGHTRACK_DATA_DIR;
    std::vector<std::string> overrides;
    app.add_option("--store", store_dir, "speech store directory")->capture_default_str();
    app.add_option("--data", data_dir, "directory holding lexicon/")->capture_default_str();

    auto* ingest = app.add_subcommand("ingest", "analyze a speech bundle and store it");
    std::string bundle_dir, transcript, alignment, audio, meta, conllu, coref, phrases;
    ingest->add_option("--bundle", bundle_dir, "bundle directory");
    ingest->add_option("--transcript", transcript);
    ingest->add_option("--alignment", alignment);
    ingest->add_option("--audio", audio);
    ingest->add_option("--meta", meta);
    ingest->add_option("--conllu", conllu);
    ingest->add_option("--coref", coref);
    ingest->add_option("--phrases", phrases);
    ingest->add_option("--set", overrides, "config override name=value (repeatable)");

    auto* list = app.add_subcommand("list", "list stored speeches");
    std::string sort = "laughter_count";
    std::string query;
    bool list_json = false;
    list->add_option("--sort", sort, "laughter_count, views, title or duration")->capture_default_str();
    list->add_option("--query", query, "substring of title, speaker or category");
    list->add_flag("--json", list_json);

    auto* annotate = app.add_subcommand("annotate", "show a stored speech");
    std::string annotate_id;
    bool print = false;
    annotate->add_flag("--print", print, "inline annotation rendering (default is the JSON document)");
    annotate->add_option("id", annotate_id)->required();

    auto* serve = app.add_subcommand("serve", "run the HTTP/JSON API");
    int port = 8080;
    std::string host = "127.0.0.1";
    serve->add_option("--port", port)->capture_default_str();
    serve->add_option("--host", host)->capture_default_str();

    auto* recompute = app.add_subcommand("recompute", "re-run detectors with new thresholds");
    std::string recompute_id;
    std::vector<std::string> recompute_sets;
    recompute->add_option("id", recompute_id)->required();
    recompute->add_option("--set", recompute_sets, "threshold override name=value (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        SpeechStore store(store_dir);
        auto lex = lexicon::load_bundled(data_dir);
        AnalysisConfig defaults;
        Service service(store, lex, defaults);

        if (*ingest) {
            BundleInputs b;
            if (!bundle_dir.empty()) b = read_bundle(bundle_dir);
            auto take = [](const std::string& path, std::string& slot) {
                if (!path.empty()) slot = slurp(path);
            };
            auto take_opt = [](const std::string& path, std::optional<std::string>& slot) {
                if (!path.empty()) slot = slurp(path);
            };
            take(transcript, b.transcript);
            take(alignment, b.alignment);
            take(audio, b.audio);
            take(meta, b.meta);
            take_opt(conllu, b.conllu);
            take_opt(coref, b.coref);
            take_opt(phrases, b.phrases);
            if (b.transcript.empty()) throw ValidationError("ingest", "bundle is missing transcript");
            if (b.alignment.empty()) throw ValidationError("ingest", "bundle is missing alignment");
            if (b.audio.empty()) throw ValidationError("ingest", "bundle is missing audio");
            if (b.meta.empty()) throw ValidationError("ingest", "bundle is missing meta");
            AnalysisConfig config = defaults;
            for (const auto& o : overrides) apply_override(config, o);
            auto id = service.ingest(b, config);
            auto doc = service.document(id);
            std::cout << id << " v" << doc->version << " " << doc->laughter_count() << " punchlines\n";
        } else if (*list) {
            std::optional<std::string> q;
            if (!query.empty()) q = query;
            auto rows = service.list(parse_sort_key(sort), q);
            if (list_json) {
                Json out = Json::array();
                for (const auto& r : rows) out.push_back(to_json(r));
                std::cout << out.dump(1) << "\n";
            } else {
                for (const auto& r : rows)
                    std::cout << r.meta.id << "\t" << r.laughter_count << "\t" << r.meta.views << "\t"
                              << r.meta.duration_s << "\t" << r.meta.title << "\n";
            }
        } else if (*annotate) {
            auto doc = service.document(annotate_id);
            if (print) std::cout << render::document_text(*doc);
            else std::cout << serialize(*doc) << "\n";
        } else if (*serve) {
            HttpServer server(service);
            int bound = server.bind(host, port);
            if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cout << "listening on " << host << ":" << bound << std::endl;
            server.serve();
            g_server = nullptr;
        } else if (*recompute) {
            auto doc = service.document(recompute_id);
            AnalysisConfig config = doc->config;
            for (const auto& o : recompute_sets) apply_override(config, o);
            // Only detector thresholds can change after ingest.
            AnalysisConfig rest = config;
            rest.thresholds = doc->config.thresholds;
            if (!(rest == doc->config))
                throw ValidationError("service", "recompute only changes thresholds; re-ingest to change other settings");
            int version = service.recompute(recompute_id, config.thresholds);
            std::cout << recompute_id << " v" << version << "\n";
        }
        return kExitOk;
    } catch (const ValidationError& e) {
        std::cerr << "error [" << e.stage() << "]: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NotFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

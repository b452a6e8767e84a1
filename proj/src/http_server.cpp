#include "laughtrack/http_server.hpp"

#include <httplib.h>

#include "laughtrack/error.hpp"
#include "laughtrack/text_util.hpp"

namespace laughtrack {

namespace {

constexpr const char* kJson = "application/json";

void send_json(httplib::Response& res, const Json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, const std::string& message, const std::string& stage = {}) {
    Json body = {{"error", message}};
    if (!stage.empty()) body["stage"] = stage;
    send_json(res, body, status);
}

// Maps the engine's error types onto status codes.
template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
    return [fn](const httplib::Request& req, httplib::Response& res) {
        try {
            fn(req, res);
        } catch (const ValidationError& e) {
            send_error(res, 400, e.what(), e.stage());
        } catch (const NotFound& e) {
            send_error(res, 404, e.what());
        } catch (const Gone& e) {
            send_error(res, 410, e.what());
        } catch (const std::exception& e) {
            send_error(res, 500, e.what());
        }
    };
}

int int_param(const std::string& value, const char* name) {
    long long v = 0;
    if (!text::parse_int(value, v)) throw ValidationError("service", std::string(name) + " must be an integer");
    return static_cast<int>(v);
}

std::optional<int> opt_int(const httplib::Request& req, const char* name) {
    if (!req.has_param(name)) return std::nullopt;
    return int_param(req.get_param_value(name), name);
}

std::vector<FeatureKind> kinds_param(const httplib::Request& req, const char* name) {
    std::vector<FeatureKind> out;
    if (!req.has_param(name)) return out;
    for (auto part : text::split(req.get_param_value(name), ',')) {
        part = text::trim(part);
        if (part.empty()) continue;
        auto k = parse_kind(part);
        if (!k) throw ValidationError("service", "unknown feature kind '" + std::string(part) + "'");
        out.push_back(*k);
    }
    return out;
}

// Path segments are plain ids and indices; anything else is not a route.
int index_at(const httplib::Request& req, std::size_t i) { return int_param(req.matches[i].str(), "index"); }

}  // namespace

struct HttpServer::Impl {
    Service& service;
    httplib::Server server;

    explicit Impl(Service& s) : service(s) { routes(); }

    void routes() {
        server.set_payload_max_length(512ull << 20);

        server.Get("/speeches", guarded([this](const httplib::Request& req, httplib::Response& res) {
            auto key = parse_sort_key(req.has_param("sort") ? req.get_param_value("sort") : "laughter_count");
            std::optional<std::string> q;
            if (req.has_param("q")) q = req.get_param_value("q");
            Json out = Json::array();
            for (const auto& l : service.list(key, q)) out.push_back(to_json(l));
            send_json(res, out);
        }));

        server.Post("/speeches", guarded([this](const httplib::Request& req, httplib::Response& res) {
            if (!req.is_multipart_form_data())
                throw ValidationError("ingest", "POST /speeches expects a multipart bundle");
            BundleInputs b;
            auto required = [&](const char* name) {
                if (!req.has_file(name)) throw ValidationError("ingest", std::string("bundle is missing ") + name);
                return req.get_file_value(name).content;
            };
            auto optional = [&](const char* name) -> std::optional<std::string> {
                if (!req.has_file(name)) return std::nullopt;
                return req.get_file_value(name).content;
            };
            b.transcript = required("transcript");
            b.alignment = required("alignment");
            b.audio = required("audio");
            b.meta = required("meta");
            b.conllu = optional("conllu");
            b.coref = optional("coref");
            b.phrases = optional("phrases");
            std::optional<AnalysisConfig> config;
            if (auto overrides = optional("config")) {
                AnalysisConfig c = service.defaults();
                c.thresholds = thresholds_from_json(Json::parse(*overrides), c.thresholds);
                config = c;
            }
            const auto id = service.ingest(b, config);
            send_json(res, {{"id", id}, {"version", service.document(id)->version}}, 201);
        }));

        server.Get(R"(/speeches/([a-z0-9_-]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
            send_json(res, to_json(*service.document(req.matches[1].str())));
        }));

        server.Get(R"(/speeches/([a-z0-9_-]+)/summary)",
                   guarded([this](const httplib::Request& req, httplib::Response& res) {
                       std::optional<double> resolution;
                       if (req.has_param("resolution")) {
                           double r = 0.0;
                           if (!text::parse_double(req.get_param_value("resolution"), r))
                               throw ValidationError("service", "resolution must be a number");
                           resolution = r;
                       }
                       send_json(res, to_json(service.summary(req.matches[1].str(), resolution)));
                   }));

        server.Get(R"(/speeches/([a-z0-9_-]+)/snippets)",
                   guarded([this](const httplib::Request& req, httplib::Response& res) {
                       HumorFocusFilter f;
                       f.min_context = opt_int(req, "min_context");
                       f.max_context = opt_int(req, "max_context");
                       f.text_kinds = kinds_param(req, "text_kinds");
                       f.audio_kinds = kinds_param(req, "audio_kinds");
                       if (req.has_param("keyword")) f.keyword = req.get_param_value("keyword");
                       send_json(res, {{"snippets", service.filter_snippets(req.matches[1].str(), f)}});
                   }));

        server.Get(R"(/speeches/([a-z0-9_-]+)/snippets/(-?\d+))",
                   guarded([this](const httplib::Request& req, httplib::Response& res) {
                       auto doc = service.document(req.matches[1].str());
                       send_json(res, snippet_detail_json(service.snippet(*doc, index_at(req, 2))));
                   }));

        server.Get(R"(/speeches/([a-z0-9_-]+)/snippets/(-?\d+)/audio/(-?\d+))",
                   guarded([this](const httplib::Request& req, httplib::Response& res) {
                       auto bytes = service.audio_clip(req.matches[1].str(), index_at(req, 2), index_at(req, 3));
                       res.set_content(bytes, "audio/wav");
                   }));

        server.Get(R"(/speeches/([a-z0-9_-]+)/occurrences)",
                   guarded([this](const httplib::Request& req, httplib::Response& res) {
                       if (!req.has_param("keyword")) throw ValidationError("service", "keyword parameter required");
                       Json out = Json::array();
                       for (const auto& o : service.occurrences(req.matches[1].str(), req.get_param_value("keyword")))
                           out.push_back({{"snippet", o.snippet},
                                          {"sentence", o.sentence},
                                          {"token", o.token},
                                          {"time_s", o.time_s}});
                       send_json(res, out);
                   }));

        server.Post(R"(/speeches/([a-z0-9_-]+)/recompute)",
                    guarded([this](const httplib::Request& req, httplib::Response& res) {
                        const auto id = req.matches[1].str();
                        Json body = Json::object();
                        if (!req.body.empty()) {
                            try {
                                body = Json::parse(req.body);
                            } catch (const Json::exception& e) {
                                throw ValidationError("service", std::string("recompute body is not JSON: ") + e.what());
                            }
                        }
                        auto base = service.document(id)->config.thresholds;
                        auto version = service.recompute(id, thresholds_from_json(body, base));
                        send_json(res, {{"id", id}, {"version", version}});
                    }));

        server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
            if (res.body.empty()) send_error(res, res.status, "no such route");
        });
    }
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {}
HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::serve() { return impl_->server.listen_after_bind(); }
void HttpServer::stop() { impl_->server.stop(); }
void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace laughtrack

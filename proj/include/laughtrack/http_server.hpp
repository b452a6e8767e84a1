#pragma once

#include <memory>
#include <string>

#include "laughtrack/service.hpp"

namespace laughtrack {

// JSON API over a Service:
//   GET  /speeches?sort=&q=
//   POST /speeches                         multipart bundle
//   GET  /speeches/{id}
//   GET  /speeches/{id}/summary?resolution=
//   GET  /speeches/{id}/snippets?min_context=&max_context=&text_kinds=&audio_kinds=&keyword=
//   GET  /speeches/{id}/snippets/{k}
//   GET  /speeches/{id}/snippets/{k}/audio/{j}   audio/wav
//   GET  /speeches/{id}/occurrences?keyword=
//   POST /speeches/{id}/recompute          JSON thresholds
// Errors: 400 validation, 404 not found, 410 gone, 500 otherwise, each as
// {"error": ..., "stage": ...}.
class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();

    // Port 0 picks a free port; returns the bound port or -1.
    int bind(const std::string& host, int port);
    // Blocks until stop().
    bool serve();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace laughtrack

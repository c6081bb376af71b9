// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/server.hpp"
#include "ivis/error.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

namespace ivis::service {

namespace {

void close_fd(int& fd)
{
    if (fd >= 0) {
        ::close(fd);
        fd = -1;
    }
}

// Best effort; a peer that stops reading loses its frames.
void send_all(int fd, std::string_view data)
{
    while (!data.empty()) {
        const auto n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            return;
        }
        data.remove_prefix(static_cast<std::size_t>(n));
    }
}

void send_frames(int fd, const std::vector<std::string>& frames)
{
    std::string buf;
    for (const auto& f : frames) {
        buf += f;
        buf += '\n';
    }
    send_all(fd, buf);
}

std::string io_message(const std::string& what)
{
    return what + ": " + std::strerror(errno);
}

}  // namespace

Endpoint parse_endpoint(std::string_view text)
{
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos) {
        throw Error(Errc::config, "listen address must be host:port");
    }
    Endpoint ep;
    if (colon > 0) {
        ep.host = std::string(text.substr(0, colon));
    }
    const auto port = text.substr(colon + 1);
    if (port.empty() || port.size() > 5 || port.find_first_not_of("0123456789") != std::string_view::npos) {
        throw Error(Errc::config, "bad port '" + std::string(port) + "'");
    }
    const auto value = std::stoul(std::string(port));
    if (value > 65535) {
        throw Error(Errc::config, "port out of range");
    }
    ep.port = static_cast<std::uint16_t>(value);
    return ep;
}

struct Server::Connection {
    int fd = -1;
    std::string buffer;
    std::unique_ptr<WireSession> session;
    int number = 0;
    bool discarding = false;  // inside an oversized frame
};

Server::Server(std::shared_ptr<const LoadedScenario> scenario, ServerOptions options)
    : scenario_(std::move(scenario)), options_(std::move(options))
{
    if (::pipe(wake_) != 0) {
        throw Error(Errc::io, io_message("pipe"));
    }
    ::fcntl(wake_[0], F_SETFL, O_NONBLOCK);
    ::fcntl(wake_[1], F_SETFL, O_NONBLOCK);
}

Server::~Server()
{
    if (active_) {
        end_session();
    }
    close_fd(listen_fd_);
    close_fd(wake_[0]);
    close_fd(wake_[1]);
}

std::uint16_t Server::listen()
{
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = AI_PASSIVE | AI_NUMERICSERV;
    addrinfo* res = nullptr;
    const auto port = std::to_string(options_.endpoint.port);
    const char* host = options_.endpoint.host.empty() ? nullptr : options_.endpoint.host.c_str();
    if (const int rc = ::getaddrinfo(host, port.c_str(), &hints, &res); rc != 0) {
        throw Error(Errc::io, "cannot resolve '" + options_.endpoint.host + "': " + ::gai_strerror(rc));
    }
    std::string last_error = "no usable address";
    for (auto* ai = res; ai; ai = ai->ai_next) {
        const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) {
            last_error = io_message("socket");
            continue;
        }
        const int yes = 1;
        ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
        if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 8) == 0) {
            listen_fd_ = fd;
            break;
        }
        last_error = io_message("bind " + options_.endpoint.host + ":" + port);
        ::close(fd);
    }
    ::freeaddrinfo(res);
    if (listen_fd_ < 0) {
        throw Error(Errc::io, last_error);
    }

    sockaddr_storage addr{};
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    if (addr.ss_family == AF_INET6) {
        return ntohs(reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port);
    }
    return ntohs(reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
}

void Server::stop()
{
    stopping_ = true;
    const char byte = 1;
    [[maybe_unused]] const auto n = ::write(wake_[1], &byte, 1);
}

std::vector<SessionSummary> Server::sessions() const
{
    std::lock_guard lock(summaries_mutex_);
    return summaries_;
}

void Server::accept_one()
{
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
        return;
    }
    if (active_) {
        send_frames(fd, {encode_protocol_error("busy", "another participant session is in progress")});
        ::close(fd);
        return;
    }

    active_ = std::make_unique<Connection>();
    active_->fd = fd;
    active_->number = ++session_counter_;
    const auto opened = std::chrono::steady_clock::now();
    SessionConfig config;
    config.record_dir = options_.record_dir;
    config.session_number = active_->number;
    config.clock = options_.clock;
    config.wall_elapsed = [opened] {
        return std::chrono::duration_cast<Millis>(std::chrono::steady_clock::now() - opened);
    };
    active_->session = std::make_unique<WireSession>(scenario_, std::move(config));
    send_frames(fd, active_->session->open());
}

bool Server::read_active()
{
    char chunk[4096];
    const auto n = ::recv(active_->fd, chunk, sizeof chunk, 0);
    if (n < 0 && errno == EINTR) {
        return true;
    }
    if (n <= 0) {
        return false;
    }
    auto& conn = *active_;
    conn.buffer.append(chunk, static_cast<std::size_t>(n));
    std::vector<std::string> out;
    std::size_t start = 0;
    for (auto nl = conn.buffer.find('\n'); nl != std::string::npos; nl = conn.buffer.find('\n', start)) {
        std::string_view frame{conn.buffer.data() + start, nl - start};
        start = nl + 1;
        if (conn.discarding) {
            conn.discarding = false;
            continue;
        }
        if (!frame.empty() && frame.back() == '\r') {
            frame.remove_suffix(1);
        }
        if (frame.find_first_not_of(" \t") == std::string_view::npos) {
            continue;
        }
        auto replies = conn.session->handle(frame);
        out.insert(out.end(), std::make_move_iterator(replies.begin()), std::make_move_iterator(replies.end()));
    }
    conn.buffer.erase(0, start);
    if (conn.buffer.size() > kMaxFrameBytes) {
        conn.buffer.clear();
        if (!conn.discarding) {
            out.push_back(encode_protocol_error("malformed", "frame exceeds the size limit"));
        }
        conn.discarding = true;
    }
    if (!out.empty()) {
        send_frames(conn.fd, out);
    }
    return true;
}

void Server::end_session()
{
    auto conn = std::move(active_);
    SessionSummary summary;
    summary.session_number = conn->number;
    try {
        conn->session->close();
        if (!options_.record_dir.empty()) {
            summary.trace = conn->session->trace_path();
        }
    } catch (const Error&) {
        // Recording failure must not take the server down; the summary has no trace.
    }
    summary.result = conn->session->result();
    close_fd(conn->fd);
    std::lock_guard lock(summaries_mutex_);
    summaries_.push_back(std::move(summary));
}

void Server::run()
{
    if (listen_fd_ < 0) {
        throw Error(Errc::io, "run() before listen()");
    }
    while (!stopping_) {
        if (options_.max_sessions && !active_ && static_cast<std::size_t>(session_counter_) >= options_.max_sessions) {
            break;
        }
        pollfd fds[3] = {{wake_[0], POLLIN, 0}, {listen_fd_, POLLIN, 0}, {-1, POLLIN, 0}};
        nfds_t count = 2;
        if (active_) {
            fds[2].fd = active_->fd;
            count = 3;
        }
        if (::poll(fds, count, -1) < 0) {
            if (errno == EINTR) continue;
            throw Error(Errc::io, io_message("poll"));
        }
        if (fds[0].revents) {
            char drain[16];
            while (::read(wake_[0], drain, sizeof drain) > 0) {
            }
        }
        // Read the active connection before accepting so a reconnect right
        // after a close is not reported busy.
        if (active_ && fds[2].revents) {
            if (!read_active()) {
                end_session();
            }
        }
        if (fds[1].revents & POLLIN) {
            accept_one();
        }
    }
    if (active_) {
        end_session();
    }
}

}  // namespace ivis::service

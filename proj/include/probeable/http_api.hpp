#pragma once

#include <filesystem>
#include <memory>

#include "probeable/contest.hpp"

namespace httplib {
class Server;
}

namespace probeable {

/// Registers the /api routes (and static assets at / when static_dir is
/// set). The contest must outlive the server.
void install_routes(httplib::Server& server, Contest& contest, const std::filesystem::path& static_dir = {});

}  // namespace probeable

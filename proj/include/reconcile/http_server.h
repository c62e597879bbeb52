#pragma once

#include "reconcile/dialogue.h"

#include <string>

namespace httplib {
class Server;
}

namespace reconcile {

// Binds the dialogue routes (see README.md) to server. The service must
// outlive the server.
void register_routes(httplib::Server &server, DialogueService &service);

// Blocks until the server stops. Returns false if the port cannot be bound.
bool serve(DialogueService &service, const std::string &host, int port);

}  // namespace reconcile

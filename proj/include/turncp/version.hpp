#pragma once

#define TURNCP_VERSION "0.1.0"

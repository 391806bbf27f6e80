from ._lwt import *  # noqa: F401,F403

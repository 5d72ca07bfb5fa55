"""Protocol phases: initialization, twin creation, delegation, handovers."""

from .entities import (
    AccessDelegation,
    Amf,
    Ausf,
    DigitalTwin,
    EntityKeys,
    Fallback,
    Gnb,
    KeyDirectory,
    MobileDevice,
    Phase,
    SessionKeys,
    make_ident,
)
from .errors import ConfigError, Reject, RejectReason
from .params import (
    DtIdentityRecord,
    SystemParams,
    bound_public_key,
    create_dt_identity,
    issue_partial_key,
    system_init,
    trace_identity,
    verify_partial_key,
)

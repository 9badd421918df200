import hashlib
import pickle
from typing import Any


def object_hash(value: Any) -> str:
    """Stable digest of a picklable value, used to key memoized results."""
    try:
        payload = pickle.dumps(value, protocol=pickle.HIGHEST_PROTOCOL)

    except Exception as exc:
        raise TypeError(
            "Unable to serialize arguments for hashing - memoized functions only accept picklable arguments "
            f"(got {type(value).__name__})"
        ) from exc

    return hashlib.blake2b(payload, digest_size=16).hexdigest()

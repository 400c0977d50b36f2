"""
Golden Store — keeps the reproduction results of `check` as JSON files.
Flags any drift between a fresh computation and the stored payload.

Golden files: data/golden/<name>.json
"""
import os
import sys
import json

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)
sys.path.insert(0, parent_dir)

from config import settings
from emitters.json_codec import dumps
from utils.logger import setup_logger

logger = setup_logger("GoldenStore")


def golden_path(name: str) -> str:
    return os.path.join(settings.GOLDEN_DIR, f"{name}.json")


def load_golden(name: str):
    """Stored payload, or None if the file is missing or unreadable."""
    path = golden_path(name)
    if not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except (json.JSONDecodeError, OSError) as e:
        logger.warning("Failed to read golden file %s: %s (treating as missing)", path, e)
        return None


def save_golden(name: str, payload):
    path = golden_path(name)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(payload))
    logger.info("Golden file saved: %s", path)


def _to_signature(payload) -> set:
    """Top-level (key, canonical value) pairs, comparable across runs."""
    if not isinstance(payload, dict):
        return {("", json.dumps(payload, sort_keys=True))}
    return {(k, json.dumps(v, sort_keys=True)) for k, v in payload.items()}


def has_changed(name: str, payload, update: bool = False) -> bool:
    """
    Compare a fresh payload against the stored golden file.
    Returns True if anything differs. The payload is recorded when the file
    is missing or when `update` is set.
    """
    stored = load_golden(name)
    if stored is None:
        logger.info("No golden file for %s, recording it", name)
        save_golden(name, payload)
        return False

    current_sig = _to_signature(payload)
    stored_sig = _to_signature(stored)
    changed = current_sig != stored_sig

    if changed:
        added = sorted(k for k, _ in current_sig - stored_sig)
        removed = sorted(k for k, _ in stored_sig - current_sig)
        if added:
            logger.info("%s CHANGED, new/updated: %s", name, added)
        if removed:
            logger.info("%s CHANGED, stale: %s", name, removed)
        if update:
            save_golden(name, payload)
    else:
        logger.info("%s matches its golden file", name)

    return changed

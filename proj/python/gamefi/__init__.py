"""Deterministic GameFi ledger engine.

Thin dict-returning layer over the compiled ``_gamefi`` extension.
"""

import json as _json
import os as _os

from . import _gamefi
from ._gamefi import (
    DecodeError,
    GenesisError,
    IntegrityError,
    Rejection,
    ScenarioError,
    SignatureInvalid,
    decode_transaction as _decode_transaction,
    keygen,
    quote,
    sha256,
)

__all__ = [
    "DecodeError",
    "Engine",
    "GenesisError",
    "IntegrityError",
    "Rejection",
    "ScenarioError",
    "SignatureInvalid",
    "decode_transaction",
    "keygen",
    "load_scenario",
    "quote",
    "run_scenario",
    "scenario_genesis",
    "sha256",
    "sign_transaction",
    "verify_replay",
]


def _loads(text):
    return None if text is None else _json.loads(text)


def sign_transaction(seed: bytes, nonce: int, payload: dict):
    """Returns (canonical bytes, txid hex)."""
    return _gamefi.sign_transaction(seed, nonce, _json.dumps(payload))


def decode_transaction(raw: bytes) -> dict:
    return _json.loads(_decode_transaction(raw))


class Engine:
    """In-process ledger: a transaction pool plus block production."""

    def __init__(self, genesis: dict):
        self._engine = _gamefi.Engine(_json.dumps(genesis))

    def submit(self, tx: bytes, submitted_at=None):
        """Queues a signed transaction. Returns (txid hex, duplicate)."""
        return self._engine.submit(tx, submitted_at)

    def credit(self, address: str, amount: int):
        self._engine.credit(address, amount)

    def produce_block(self, timestamp: int) -> dict:
        return _json.loads(self._engine.produce_block(timestamp))

    @property
    def height(self) -> int:
        return self._engine.height

    @property
    def pending(self) -> int:
        return self._engine.pending

    @property
    def state_root(self) -> str:
        return self._engine.state_root

    def block(self, height: int):
        return _loads(self._engine.block(height))

    def account(self, address: str) -> dict:
        return _json.loads(self._engine.account(address))

    def asset(self, asset_id: int):
        return _loads(self._engine.asset(asset_id))

    def assets_by_owner(self, owner: str) -> list:
        return _json.loads(self._engine.assets_by_owner(owner))

    def pool(self, pool_id: int):
        return _loads(self._engine.pool(pool_id))

    def price(self, feed_id: str):
        return _loads(self._engine.price(feed_id))

    def export(self, directory):
        self._engine.export(_os.fspath(directory))


def load_scenario(path) -> dict:
    """Parses and validates a scenario file; returns it with defaults filled in."""
    return _json.loads(_gamefi.load_scenario(_os.fspath(path)))


def scenario_genesis(scenario: dict) -> dict:
    """Genesis configuration a scenario's population starts from."""
    return _json.loads(_gamefi.scenario_genesis(_json.dumps(scenario)))


def run_scenario(scenario: dict, seed=None, mode=None, api_url=None, export_dir=None) -> dict:
    """Runs a scenario to completion and returns its metrics report."""
    if export_dir is not None:
        export_dir = _os.fspath(export_dir)
    return _json.loads(_gamefi.run_scenario(_json.dumps(scenario), seed, mode, api_url, export_dir))


def verify_replay(directory) -> None:
    """Re-executes an exported chain; raises IntegrityError on any mismatch."""
    _gamefi.verify_replay(_os.fspath(directory))

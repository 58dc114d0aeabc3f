"""Run manifests: a JSON record of what a CLI invocation produced.

The manifest lists the tool name and version, the subcommand, the fully
resolved parameters (sorted by key), declared inputs, and for every
output file its path, SHA-256, and byte size.  No timestamps or host
details, so identical runs produce identical manifests.
"""

import hashlib
import json
import os

from . import __version__

__all__ = ["file_digest", "build_manifest", "write_manifest"]


def file_digest(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def build_manifest(command, parameters, outputs, inputs=()):
    return {
        "tool": "trinodal",
        "version": __version__,
        "command": command,
        "parameters": {k: parameters[k] for k in sorted(parameters)},
        "inputs": list(inputs),
        "outputs": [
            {"path": p, "sha256": file_digest(p), "bytes": os.path.getsize(p)}
            for p in outputs
        ],
    }


def write_manifest(command, parameters, outputs, manifest_path=None, inputs=()):
    """Write the manifest next to the first output (path + '.manifest.json')
    unless an explicit path is given.  Returns the manifest path."""
    if manifest_path is None:
        if not outputs:
            raise ValueError("a manifest needs at least one output or an "
                             "explicit path")
        manifest_path = outputs[0] + ".manifest.json"
    doc = build_manifest(command, parameters, outputs, inputs)
    with open(manifest_path, "w", newline="\n") as fh:
        json.dump(doc, fh, indent=1, sort_keys=False)
        fh.write("\n")
    return manifest_path

import csv
import io
import json


def format_json(data):
    """Indented JSON text of a report dictionary"""
    return json.dumps(data, indent=2) + "\n"


def format_csv(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def format_matrix(matrix):
    """Aligned text rendering of an exact matrix"""
    cells = [[str(x) for x in row] for row in matrix]
    if not cells:
        return "[]\n"
    width = max(len(c) for row in cells for c in row)
    return "".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]\n" for row in cells)


def format_certificate(cert):
    """Short human summary of a certificate dictionary"""
    lines = [
        f"status: {cert['status']}",
        f"normal space dimension: {cert['dim_normal']}",
        f"invariant normal dimension: {cert['dim_invariant_normal']}",
        f"group generators: {cert['group']['generators']}",
    ]
    if cert.get("witness"):
        lines.append("witness:")
        lines.append(format_matrix(cert["witness"]).rstrip("\n"))
    return "\n".join(lines) + "\n"


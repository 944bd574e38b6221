from utils.settings import TOOL_VERSION


class RunReport:
    """
    Envelope written by every CLI subcommand

    `result` holds the subcommand's own dictionary (certificate, Ricci data,
    trajectory summary, ...). `wall_time` is left out of batch item reports so
    that reruns produce identical bytes.
    """

    def __init__(self, subcommand, input_hash, result, wall_time=None, input_name=None,
                 tool_version=TOOL_VERSION):
        self.subcommand = subcommand
        self.input_hash = input_hash
        self.input_name = input_name
        self.result = result
        self.wall_time = wall_time
        self.tool_version = tool_version

    @property
    def status(self):
        return self.result.get("status") if isinstance(self.result, dict) else None

    def to_dict(self):
        data = {
            "tool_version": self.tool_version,
            "subcommand": self.subcommand,
            "input_hash": self.input_hash,
        }
        if self.input_name:
            data["input"] = self.input_name
        data["result"] = self.result
        if self.wall_time is not None:
            data["wall_time"] = round(self.wall_time, 6)
        return data

    @classmethod
    def from_dict(cls, data):
        return cls(
            subcommand=data["subcommand"],
            input_hash=data.get("input_hash"),
            result=data.get("result"),
            wall_time=data.get("wall_time"),
            input_name=data.get("input"),
            tool_version=data.get("tool_version", TOOL_VERSION),
        )

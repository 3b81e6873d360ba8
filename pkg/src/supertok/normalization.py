"""Unicode normalization applied before any segmentation."""

from __future__ import annotations

import enum
import unicodedata


class NormalizationForm(str, enum.Enum):
    NFC = "NFC"
    NFD = "NFD"
    NFKC = "NFKC"
    IDENTITY = "identity"

    @classmethod
    def parse(cls, value: "str | NormalizationForm") -> "NormalizationForm":
        if isinstance(value, cls):
            return value
        key = str(value).strip()
        for form in cls:
            if key.lower() == form.value.lower() or key.upper() == form.name:
                return form
        raise ValueError(f"unknown normalization form: {value!r}")


DEFAULT_FORM = NormalizationForm.NFKC


class InvalidUTF8Error(ValueError):
    """Raised when input bytes are not valid UTF-8."""

    def __init__(self, offset: int, reason: str = "invalid UTF-8"):
        self.offset = offset
        super().__init__(f"{reason} at byte offset {offset}")


def decode_utf8(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InvalidUTF8Error(exc.start) from None


def normalize(text: str | bytes, form: NormalizationForm | str = DEFAULT_FORM) -> str:
    """Return ``text`` in the requested normalization form.

    Byte input is decoded strictly; the identity form returns the input
    unchanged (as ``str``).
    """
    if isinstance(text, (bytes, bytearray)):
        text = decode_utf8(bytes(text))
    form = NormalizationForm.parse(form)
    if form is NormalizationForm.IDENTITY:
        return text
    return unicodedata.normalize(form.value, text)

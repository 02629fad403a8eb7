"""Hand-derived preprocessing outputs: (source, clean_text, (mentions, hashtags, urls))."""

PREPROCESS_GOLDEN = [
    ("hi @bob see #fun http://t.co/x", "hi see", (1, 1, 1)),
    ("no special elements here", "no special elements here", (0, 0, 0)),
    ("@a @b", "", (2, 0, 0)),
    ("   \t\n", "", (0, 0, 0)),
    ("HTTPS://Example.COM/Path?q=1 Wow", "Wow", (0, 0, 1)),
    ("Http://x.y", "", (0, 0, 1)),
    ("email me at bob@example.com", "email me at bob@example.com", (0, 0, 0)),
    ("C# is fun", "C# is fun", (0, 0, 0)),
    ("#1 fan", "fan", (0, 1, 0)),
    ("just # here", "just # here", (0, 0, 0)),
    ("at @ noon", "at @ noon", (0, 0, 0)),
    ("@user_name: hello", ": hello", (1, 0, 0)),
    # mention handles are ASCII only, so the run stops before the accent
    ("@José hola", "é hola", (1, 0, 0)),
    # hashtags take any Unicode word character
    ("#café au lait", "au lait", (0, 1, 0)),
    ("#日本語 テスト", "テスト", (0, 1, 0)),
    ("I ❤️ #NYC 😀", "I ❤️ 😀", (0, 1, 0)),
    ("😀@bob", "😀@bob", (0, 0, 0)),
    ("Look:https://a.b/c,d!", "Look:", (0, 0, 1)),
    ("ftp://files.example.com", "ftp://files.example.com", (0, 0, 0)),
    ("http:// spaced", "http:// spaced", (0, 0, 0)),
    ("RT @a: #b #c http://x http://y end", "RT : end", (1, 2, 2)),
    # removing "#a" exposes "@b" at the start of the text
    ("#a@b", "", (1, 1, 0)),
    ("x #tag1#tag2", "x", (0, 2, 0)),
    ("hello\n\nworld  again", "hello world again", (0, 0, 0)),
    ("   padded   text   ", "padded text", (0, 0, 0)),
    ("MiXeD CaSe @Someone TEXT", "MiXeD CaSe TEXT", (1, 0, 0)),
    ("tab\t@x\tafter", "tab after", (1, 0, 0)),
    ("http://a.com/@user #tag", "", (0, 1, 1)),
    ("multiple!!! punctuation??? kept...", "multiple!!! punctuation??? kept...", (0, 0, 0)),
    ("@@double", "@@double", (0, 0, 0)),
    ("##double", "##double", (0, 0, 0)),
    ("🔥🔥 lit #goals @friend 💯", "🔥🔥 lit 💯", (1, 1, 0)),
]

"""Regenerates the snapshot fixtures and their screenshots.

Layouts are authored by hand below; screenshots are flat renderings of the
element boxes so that annotation-color selection has real pixels to read.
Run from the repository root: python3 tests/fixtures/make_fixtures.py
"""

import json
import os

from PIL import Image, ImageDraw

OUT = os.path.join(os.path.dirname(__file__), "snapshots")


def box(x0, y0, x1, y1):
    w, h = x1 - x0, y1 - y0
    return [x0 + w // 2, y0 + h // 2, w, h]


class Page:
    def __init__(self, pid, url, vw, vh, lang="en", bg=(255, 255, 255)):
        self.pid, self.url, self.vw, self.vh, self.lang, self.bg = pid, url, vw, vh, lang, bg
        self.icons = []
        self.paint = []

    def el(self, tag, rect, text=None, children=(), click=False, attrs=None,
           fill=None, listener=False):
        x0, y0, x1, y1 = rect
        visible = x1 > 0 and y1 > 0 and x0 < self.vw and y0 < self.vh
        node = {
            "tag": tag,
            "text": text,
            "bbox": box(*rect),
            "visible": visible,
            "cursor_pointer": click,
            "has_event_listener": listener,
            "attrs": attrs or {},
            "children": list(children),
        }
        if fill is not None and visible:
            self.paint.append((rect, fill))
        return node

    def icon(self, rect, caption, fill=(90, 90, 90)):
        self.icons.append({"bbox": box(*rect), "caption": caption})
        self.paint.append((rect, fill))

    def write(self, dom):
        shot = f"{self.pid}.png"
        doc = {
            "id": self.pid,
            "source_url": self.url,
            "viewport_w": self.vw,
            "viewport_h": self.vh,
            "screenshot_ref": shot,
            "language": self.lang,
            "dom": dom,
            "icons": self.icons,
        }
        with open(os.path.join(OUT, self.pid + ".json"), "w", encoding="utf-8") as f:
            json.dump(doc, f, indent=1, ensure_ascii=False)
            f.write("\n")
        img = Image.new("RGB", (self.vw, self.vh), self.bg)
        draw = ImageDraw.Draw(img)
        for (x0, y0, x1, y1), fill in self.paint:
            draw.rectangle([x0, y0, x1 - 1, y1 - 1], fill=fill)
        img.save(os.path.join(OUT, shot), optimize=True)


def shop_home():
    p = Page("shop_home", "https://shop.example/", 1280, 720)
    nav = [p.el("a", (400 + i * 120, 20, 500 + i * 120, 50), t, click=True,
                attrs={"href": "/" + t.lower()}, fill=(230, 230, 250))
           for i, t in enumerate(["Home", "Deals", "Cart", "Account"])]
    p.icon((20, 15, 60, 55), "shop logo", fill=(200, 30, 30))
    header = p.el("header", (0, 0, 1280, 70), children=[
        p.el("a", (20, 15, 60, 55), click=True, attrs={"href": "/", "aria-label": "Shop home"}),
        p.el("nav", (400, 20, 880, 50), children=nav),
        p.el("input", (940, 20, 1200, 50), click=True,
             attrs={"type": "search", "placeholder": "Search products"}, fill=(245, 245, 245)),
    ], fill=(40, 40, 60))
    hero = p.el("section", (0, 70, 1280, 270), children=[
        p.el("h1", (80, 110, 700, 170), "Summer sale on outdoor gear"),
        p.el("p", (80, 180, 700, 210), "Up to 40% off tents, packs and stoves"),
        p.el("a", (80, 220, 240, 256), "Shop the sale", click=True,
             attrs={"href": "/sale", "class": "btn"}, fill=(30, 120, 200)),
    ], fill=(250, 235, 200))
    cards = []
    for i, (title, price) in enumerate([("Trail tent", "$199"), ("Day pack", "$59"),
                                        ("Camp stove", "$89")]):
        x0 = 80 + i * 380
        cards.append(p.el("div", (x0, 300, x0 + 340, 620), attrs={"class": "card"}, children=[
            p.el("img", (x0 + 20, 320, x0 + 320, 480), attrs={"alt": title + " photo"},
                 fill=(180, 200, 180)),
            p.el("h3", (x0 + 20, 490, x0 + 320, 520), title),
            p.el("span", (x0 + 20, 525, x0 + 120, 550), price),
            p.el("button", (x0 + 20, 560, x0 + 180, 600), "Add to cart", click=True,
                 fill=(240, 160, 40)),
        ], fill=(248, 248, 248)))
    main = p.el("main", (0, 270, 1280, 640), children=cards)
    footer = p.el("footer", (0, 760, 1280, 900), children=[
        p.el("a", (80, 800, 200, 830), "Contact", click=True, attrs={"href": "/contact"}),
        p.el("a", (240, 800, 360, 830), "Returns", click=True, attrs={"href": "/returns"}),
    ])
    body = p.el("body", (0, 0, 1280, 900), children=[header, hero, main, footer])
    p.write(p.el("html", (0, 0, 1280, 900), children=[body]))


def news_article():
    p = Page("news_article", "https://news.example/story/42", 1366, 768)
    sections = ["World", "Business", "Science", "Sports", "Opinion"]
    nav = p.el("nav", (0, 0, 1366, 48), children=[
        p.el("a", (40 + i * 130, 10, 150 + i * 130, 38), s, click=True,
             attrs={"href": "/" + s.lower()}) for i, s in enumerate(sections)], fill=(20, 20, 20))
    paras = []
    for i in range(6):
        y = 200 + i * 90
        paras.append(p.el("p", (60, y, 900, y + 70),
                          f"Paragraph {i + 1} of the report describes the findings in detail."))
    article = p.el("article", (40, 60, 920, 760), children=[
        p.el("h1", (60, 80, 900, 150), "Researchers map the deep ocean floor"),
        p.el("span", (60, 160, 400, 185), "By A. Writer, 3 hours ago"),
        *paras,
    ])
    related = []
    for i, t in enumerate(["Coral reefs recover", "New submarine drone", "Tides and the moon"]):
        y = 120 + i * 120
        related.append(p.el("div", (960, y, 1320, y + 100), children=[
            p.el("h4", (980, y + 10, 1300, y + 40), t),
            p.el("a", (980, y + 55, 1100, y + 85), "Read more", click=True,
                 attrs={"href": f"/related/{i}"}, fill=(210, 225, 255)),
        ], fill=(245, 245, 245)))
    aside = p.el("aside", (940, 60, 1340, 500), children=[
        p.el("h3", (960, 70, 1320, 100), "Related stories"), *related])
    p.icon((1300, 10, 1330, 38), "search", fill=(240, 240, 240))
    body = p.el("body", (0, 0, 1366, 1400), children=[
        nav, article, aside,
        p.el("button", (1300, 10, 1330, 38), click=True, attrs={"aria-label": "Search"}),
    ])
    p.write(p.el("html", (0, 0, 1366, 1400), children=[body]))


def login_form():
    p = Page("login_form", "https://accounts.example/login", 800, 600, bg=(236, 240, 244))
    form = p.el("form", (200, 100, 600, 500), children=[
        p.el("h2", (240, 120, 560, 160), "Sign in to your account"),
        p.el("label", (240, 180, 560, 200), "Email address"),
        p.el("input", (240, 205, 560, 245), click=True,
             attrs={"type": "email", "placeholder": "you@example.com", "id": "email"},
             fill=(255, 255, 255)),
        p.el("label", (240, 260, 560, 280), "Password"),
        p.el("input", (240, 285, 560, 325), click=True,
             attrs={"type": "password", "id": "password"}, fill=(255, 255, 255)),
        p.el("button", (240, 350, 560, 395), "Sign in", click=True, fill=(20, 110, 60)),
        p.el("a", (240, 410, 420, 430), "Forgot password?", click=True,
             attrs={"href": "/reset"}),
        p.el("a", (240, 450, 420, 470), "Create an account", click=True,
             attrs={"href": "/signup"}),
    ], fill=(255, 255, 255))
    body = p.el("body", (0, 0, 800, 600), children=[form])
    p.write(p.el("html", (0, 0, 800, 600), children=[body]))


def docs_page():
    p = Page("docs_page", "https://docs.example/guide/install", 1920, 1080)
    links = []
    topics = ["Overview", "Install", "Configure", "Deploy", "Monitor", "Upgrade",
              "Backup", "Restore", "Security", "Networking", "Storage", "Logging",
              "Metrics", "Alerts", "Troubleshooting", "FAQ"]
    for i, t in enumerate(topics):
        y = 90 + i * 40
        links.append(p.el("li", (20, y, 300, y + 32), children=[
            p.el("a", (30, y + 4, 290, y + 28), t, click=True,
                 attrs={"href": "/guide/" + t.lower()})]))
    sidebar = p.el("ul", (0, 80, 320, 1080), children=links, fill=(243, 244, 246))
    steps = []
    for i in range(5):
        y = 260 + i * 150
        steps.append(p.el("section", (380, y, 1500, y + 130), children=[
            p.el("h3", (400, y + 10, 1200, y + 40), f"Step {i + 1}"),
            p.el("code", (400, y + 50, 1400, y + 80), f"pkg install component-{i + 1}"),
            p.el("button", (1410, y + 50, 1490, y + 80), "Copy", click=True,
                 fill=(200, 200, 210)),
        ]))
    content = p.el("main", (360, 80, 1880, 1080), children=[
        p.el("h1", (380, 100, 1400, 160), "Installing the server"),
        p.el("p", (380, 180, 1800, 240), "Follow these steps to install the server on a fresh host."),
        *steps,
    ])
    top = p.el("header", (0, 0, 1920, 80), children=[
        p.el("a", (20, 20, 200, 60), "Docs home", click=True, attrs={"href": "/"}),
        p.el("input", (1500, 20, 1860, 60), click=True,
             attrs={"type": "search", "placeholder": "Search docs"}, fill=(255, 255, 255)),
    ], fill=(30, 60, 110))
    body = p.el("body", (0, 0, 1920, 1080), children=[top, sidebar, content])
    p.write(p.el("html", (0, 0, 1920, 1080), children=[body]))


def mobile_settings():
    p = Page("mobile_settings", "https://m.example/settings", 390, 844, bg=(242, 242, 247))
    rows = []
    for i, t in enumerate(["Wi-Fi", "Bluetooth", "Notifications", "Sounds", "Focus",
                           "Screen Time", "General", "Display", "Wallpaper", "Privacy"]):
        y = 100 + i * 64
        rows.append(p.el("li", (0, y, 390, y + 60), children=[
            p.el("span", (60, y + 18, 250, y + 42), t),
            p.el("button", (320, y + 15, 370, y + 45), click=True,
                 attrs={"role": "switch", "aria-label": t + " toggle"}, fill=(52, 199, 89)),
        ], click=True, fill=(255, 255, 255)))
        p.icon((16, y + 16, 44, y + 44), t.lower() + " icon", fill=(0, 122, 255))
    body = p.el("body", (0, 0, 390, 844), children=[
        p.el("h1", (16, 40, 300, 80), "Settings"),
        p.el("ul", (0, 100, 390, 740), children=rows),
        p.el("button", (16, 760, 374, 810), "Sign out", click=True, fill=(255, 59, 48)),
    ])
    p.write(p.el("html", (0, 0, 390, 844), children=[body]))


def dashboard():
    p = Page("dashboard", "https://app.example/dashboard", 1440, 900, bg=(250, 250, 252))
    cards = []
    for i, (label, value) in enumerate([("Revenue", "$12,400"), ("Orders", "318"),
                                        ("Refunds", "12"), ("Visitors", "9,210")]):
        x0 = 260 + i * 290
        cards.append(p.el("div", (x0, 90, x0 + 270, 200), children=[
            p.el("span", (x0 + 20, 110, x0 + 250, 135), label),
            p.el("strong", (x0 + 20, 145, x0 + 250, 185), value),
        ], fill=(255, 255, 255)))
    rows = []
    for r in range(8):
        y = 280 + r * 50
        cells = [p.el("td", (260 + c * 280, y, 520 + c * 280, y + 44), txt)
                 for c, txt in enumerate([f"#10{r}4", ["Paid", "Pending"][r % 2],
                                          f"${(r + 1) * 37}.00"])]
        cells.append(p.el("td", (1100, y, 1400, y + 44), children=[
            p.el("a", (1120, y + 8, 1200, y + 36), "View", click=True,
                 attrs={"href": f"/orders/{r}"})]))
        rows.append(p.el("tr", (260, y, 1400, y + 44), children=cells))
    table = p.el("table", (260, 230, 1400, 690), children=[
        p.el("tr", (260, 230, 1400, 274), children=[
            p.el("th", (260 + c * 280, 230, 520 + c * 280, 274), t)
            for c, t in enumerate(["Order", "Status", "Total"])]),
        *rows,
    ], fill=(255, 255, 255))
    side = p.el("nav", (0, 0, 220, 900), children=[
        p.el("a", (20, 100 + i * 50, 200, 140 + i * 50), t, click=True,
             attrs={"href": "/" + t.lower()})
        for i, t in enumerate(["Overview", "Orders", "Customers", "Reports", "Settings"])],
        fill=(28, 32, 48))
    body = p.el("body", (0, 0, 1440, 900), children=[side, *cards, table])
    p.write(p.el("html", (0, 0, 1440, 900), children=[body]))


def square_widget():
    p = Page("square_widget", "https://widgets.example/weather", 448, 448, bg=(90, 160, 230))
    p.icon((184, 90, 264, 170), "sun", fill=(255, 210, 0))
    days = [p.el("div", (24 + i * 100, 330, 124 + i * 100, 420), children=[
        p.el("span", (44 + i * 100, 340, 104 + i * 100, 360), d),
        p.el("span", (44 + i * 100, 380, 104 + i * 100, 400), t),
    ], click=True) for i, (d, t) in enumerate([("Mon", "21°"), ("Tue", "19°"),
                                                ("Wed", "23°"), ("Thu", "18°")])]
    body = p.el("body", (0, 0, 448, 448), children=[
        p.el("h2", (24, 24, 424, 64), "Lisbon"),
        p.el("strong", (150, 190, 300, 260), "22°"),
        p.el("span", (140, 270, 310, 300), "Clear sky"),
        *days,
    ])
    p.write(p.el("html", (0, 0, 448, 448), children=[body]))


def search_results():
    p = Page("search_results", "https://find.example/?q=bread", 1024, 768)
    results = []
    for i, (title, host) in enumerate([("Easy sourdough bread", "bake.example"),
                                       ("Bread machine basics", "kitchen.example"),
                                       ("Why bread goes stale", "science.example"),
                                       ("Flatbread in ten minutes", "quick.example")]):
        y = 120 + i * 150
        results.append(p.el("div", (40, y, 760, y + 130), children=[
            p.el("a", (40, y, 600, y + 30), title, click=True,
                 attrs={"href": "https://" + host + "/"}, fill=(240, 244, 255)),
            p.el("cite", (40, y + 35, 400, y + 55), host),
            p.el("p", (40, y + 60, 740, y + 100), "A short snippet from the page about " + title.lower() + "."),
            p.el("a", (40, y + 105, 120, y + 125), "Cached", click=True,
                 attrs={"href": "/cache/" + host}),
        ]))
    body = p.el("body", (0, 0, 1024, 800), children=[
        p.el("form", (40, 30, 760, 80), children=[
            p.el("input", (40, 30, 680, 80), click=True,
                 attrs={"type": "text", "placeholder": "Search"}, fill=(250, 250, 250)),
            p.el("button", (690, 30, 760, 80), "Go", click=True, fill=(66, 133, 244)),
        ]),
        *results,
    ])
    p.write(p.el("html", (0, 0, 1024, 800), children=[body]))


def blog_zh():
    p = Page("blog_zh", "https://blog.example/zh/post/7", 1280, 800, lang="zh")
    posts = []
    for i, t in enumerate(["春天的花园", "城市里的咖啡馆", "周末爬山记"]):
        y = 180 + i * 180
        posts.append(p.el("article", (100, y, 900, y + 160), children=[
            p.el("h2", (120, y + 10, 880, y + 50), t),
            p.el("p", (120, y + 60, 880, y + 110), "这是一段关于" + t + "的简短介绍。"),
            p.el("a", (120, y + 120, 220, y + 150), "阅读全文", click=True,
                 attrs={"href": f"/post/{i}"}, fill=(255, 240, 230)),
        ]))
    body = p.el("body", (0, 0, 1280, 800), children=[
        p.el("header", (0, 0, 1280, 120), children=[
            p.el("h1", (100, 30, 700, 90), "生活随笔"),
            p.el("a", (1000, 45, 1080, 75), "首页", click=True, attrs={"href": "/"}),
            p.el("a", (1100, 45, 1180, 75), "关于", click=True, attrs={"href": "/about"}),
        ], fill=(250, 250, 240)),
        *posts,
        p.el("aside", (950, 180, 1200, 500), children=[
            p.el("h3", (970, 190, 1180, 220), "标签"),
            *[p.el("a", (970, 240 + i * 40, 1100, 270 + i * 40), tag, click=True,
                   attrs={"href": "/tag/" + str(i)}) for i, tag in enumerate(["旅行", "美食", "摄影"])],
        ]),
    ])
    p.write(p.el("html", (0, 0, 1280, 800), children=[body]))


def wide_banner():
    p = Page("wide_banner", "https://events.example/banner", 2048, 512, bg=(20, 20, 40))
    tiles = []
    for i, t in enumerate(["Keynote", "Workshops", "Schedule", "Speakers", "Venue", "Tickets"]):
        x0 = 60 + i * 320
        tiles.append(p.el("a", (x0, 300, x0 + 280, 420), t, click=True,
                          attrs={"href": "/" + t.lower()}, fill=(60 + i * 25, 80, 160)))
    p.icon((1900, 40, 1980, 120), "close", fill=(230, 230, 230))
    body = p.el("body", (0, 0, 2048, 512), children=[
        p.el("h1", (60, 60, 1400, 160), "Open Systems Conference 2026"),
        p.el("p", (60, 180, 1400, 240), "Three days of talks, labs and hallway conversations"),
        *tiles,
        p.el("button", (1900, 40, 1980, 120), click=True, attrs={"aria-label": "Close banner"}),
    ])
    p.write(p.el("html", (0, 0, 2048, 512), children=[body]))


def main():
    os.makedirs(OUT, exist_ok=True)
    for make in [shop_home, news_article, login_form, docs_page, mobile_settings,
                 dashboard, square_widget, search_results, blog_zh, wide_banner]:
        make()


if __name__ == "__main__":
    main()
